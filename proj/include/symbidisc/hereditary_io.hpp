#pragma once

// JSON wire formats.
//
//   hereditary polynomial:
//     {"dim": d, "terms": [{"alpha": [..], "beta": [..], "re": r, "im": i}, ...]}
//   commuting tuple:
//     {"dim": d, "matrices": [M_1, ..., M_d]}, each M_k a row-major array of
//     rows, each row an array of [re, im] pairs.
//   single matrix: the bare row-major array of rows.
//
// Parse failures throw InvalidInput.

#include <string>
#include <string_view>
#include <vector>

#include "symbidisc/hereditary.hpp"

namespace symbidisc {

HereditaryPolynomial parse_hereditary_json(std::string_view text);
std::string to_json_string(const HereditaryPolynomial& h);

std::vector<ComplexMatrix> parse_tuple_json(std::string_view text);
ComplexMatrix parse_matrix_json(std::string_view text);
std::string tuple_to_json_string(const std::vector<ComplexMatrix>& matrices);

}  // namespace symbidisc
