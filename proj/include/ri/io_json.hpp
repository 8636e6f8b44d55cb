#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "ri/curves.hpp"
#include "ri/matrix.hpp"
#include "ri/prebasis.hpp"
#include "ri/rational.hpp"
#include "ri/set_family.hpp"

namespace ri {

using Json = nlohmann::json;

enum class NumericMode { Auto, Exact, Double };

/// One JSON document with optional sections; every command reads the subset
/// it needs. Cross-section sizes are validated here.
struct InputDocument {
    std::optional<SetFamily> family;
    std::optional<std::vector<Rational>> probabilities; // exact values
    bool probabilities_exact = false; // given as fraction text (or exact mode forced)
    std::optional<MonotoneCurve> curve;
    std::optional<PreBasis> prebasis;
    std::optional<ProjectorFamily> projectors; // explicit, or computed from prebasis
    std::optional<Matrix> rho;
    NumericMode mode = NumericMode::Auto;

    bool exact_mode() const {
        return mode == NumericMode::Exact ||
               (mode == NumericMode::Auto && probabilities_exact);
    }
    std::vector<double> probabilities_double() const;

    static InputDocument parse(const Json& j, NumericMode cli_mode,
                               bool strict_prebasis);
    static InputDocument parse_file(const std::string& path, NumericMode cli_mode,
                                    bool strict_prebasis);
};

/// Exact dyadic conversion of a finite double.
Rational rational_from_double(double v);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);
Json cvector_to_json(const CVector& v);
CVector cvector_from_json(const Json& j);
Json subset_to_json(IndexSet a); // 1-based element list

} // namespace ri
