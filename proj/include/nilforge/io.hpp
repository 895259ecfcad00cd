#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "nilforge/algebra.hpp"
#include "nilforge/grading.hpp"
#include "nilforge/mpoly.hpp"

namespace nilforge {

using Json = nlohmann::ordered_json;

/// Malformed document or unreadable file.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Json rational_json(const Rational& q);
Rational rational_from_json(const Json& j);
Json vec_json(const Vec& v);
Vec vec_from_json(const Json& j);
Json matrix_json(const Matrix& m);  // list of rows
Matrix matrix_from_json(const Json& j);

/// {"dim", "labels", "products": {"i,j": [[k, "q"], ...]}} with 1-based
/// indices, i ≤ j, zero products omitted; optional "pointing".
Json algebra_json(const NilAlgebra& a, const Pointing* pointing = nullptr);
NilAlgebra algebra_from_json(const Json& j, Pointing* pointing = nullptr);

/// {"vars": [...], "poly": "<grammar string>"}.
Json poly_json(const MPoly& p);
MPoly poly_from_json(const Json& j);

/// {"basis": [[column entries]...], "weights": [...]}.
Json grading_json(const Grading& g);
Grading grading_from_json(const Json& j);

/// Reads a file ("-" for stdin); throws FormatError on failure.
std::string read_text(const std::string& path);
Json parse_json(const std::string& text);

}  // namespace nilforge
