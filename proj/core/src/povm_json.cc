// Copyright 2026 The wmtomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <json.hpp>
#include <stdexcept>

#include "wmtomo/povm.h"

namespace wmtomo {

namespace {

using nlohmann::json;

MeterAxis parse_axis(const std::string &s) {
    if (s == "x") return MeterAxis::kX;
    if (s == "y") return MeterAxis::kY;
    if (s == "z") return MeterAxis::kZ;
    if (s == "none") return MeterAxis::kNone;
    throw std::invalid_argument("povm_from_json: unknown axis '" + s + "'");
}

json label_to_json(const OutcomeLabel &label) {
    return json{{"axis", std::string(axis_name(label.axis))},
                {"sign", label.sign},
                {"m", label.m},
                {"n", label.n},
                {"cell", label.cell},
                {"discard", label.discard}};
}

OutcomeLabel label_from_json(const json &j) {
    OutcomeLabel label;
    label.axis = parse_axis(j.value("axis", std::string("none")));
    label.sign = j.value("sign", 0);
    label.m = j.value("m", -1);
    label.n = j.value("n", -1);
    label.cell = j.value("cell", -1);
    label.discard = j.value("discard", false);
    return label;
}

}  // namespace

std::string povm_to_json(const DiscretePovm &povm) {
    json elements = json::array();
    for (const auto &e : povm.elements()) {
        json rows = json::array();
        for (Eigen::Index r = 0; r < e.op.rows(); ++r) {
            json row = json::array();
            for (Eigen::Index c = 0; c < e.op.cols(); ++c) {
                row.push_back({e.op(r, c).real(), e.op(r, c).imag()});
            }
            rows.push_back(std::move(row));
        }
        elements.push_back({{"label", label_to_json(e.label)}, {"matrix", std::move(rows)}});
    }
    json doc{{"dim", povm.dim()}, {"elements", std::move(elements)}};
    return doc.dump(2);
}

DiscretePovm povm_from_json(std::string_view text) {
    json doc = json::parse(text);
    auto d = doc.at("dim").get<Eigen::Index>();
    std::vector<PovmElement> elements;
    for (const auto &je : doc.at("elements")) {
        const auto &rows = je.at("matrix");
        if (static_cast<Eigen::Index>(rows.size()) != d) {
            throw std::invalid_argument("povm_from_json: matrix row count does not match dim");
        }
        CMatrix op(d, d);
        for (Eigen::Index r = 0; r < d; ++r) {
            const auto &row = rows.at(static_cast<size_t>(r));
            if (static_cast<Eigen::Index>(row.size()) != d) {
                throw std::invalid_argument("povm_from_json: matrix column count does not match dim");
            }
            for (Eigen::Index c = 0; c < d; ++c) {
                const auto &z = row.at(static_cast<size_t>(c));
                op(r, c) = Complex(z.at(0).get<double>(), z.at(1).get<double>());
            }
        }
        elements.push_back({label_from_json(je.at("label")), std::move(op)});
    }
    return DiscretePovm(std::move(elements));
}

}  // namespace wmtomo
