#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "carnot/lie_algebra.hpp"

namespace carnot {

// Algebra definition document (JSON):
//
//   {
//     "dim": 3,
//     "names": ["X", "Y", "W"],
//     "layers": [1, 1, 2],
//     "brackets": [[1, 2, "3:1/1"]],          // [i, j, "k:num/den"], 1-based
//     "inner_product": [["1","0"],["0","1"]], // optional, default identity
//     "casimirs": ["w"]                       // optional
//   }
//
// Throws ParseError naming the offending JSON path. Structural problems in
// the mathematics (Jacobi, grading) are not errors here; validate_algebra
// reports them.
AlgebraPtr parse_algebra_definition(std::string_view text);
AlgebraPtr load_algebra_file(const std::filesystem::path& path);

nlohmann::json algebra_to_json(const LieAlgebra& algebra);

// Builtin name or path to a definition file.
AlgebraPtr resolve_algebra(std::string_view name_or_path);

}  // namespace carnot
