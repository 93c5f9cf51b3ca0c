#pragma once

#include <map>
#include <string>

#include "mflocus/localize.hpp"

namespace mflocus {

// A parsed .lg model file: the ring and potential, optional named matrix
// factorizations (validated on load), and optional probe loci.
struct ModelFile {
    ModelPtr model;
    std::map<std::string, MatrixFactorization> factorizations;
    std::vector<PrimeLocus> probes;
    std::string path;

    const MatrixFactorization& factorization(const std::string& name) const;
};

// Sectioned key-value text:
//   [ring]       vars = x, y           relation = x*y (repeatable)
//   [potential]  W = x^2
//   [probes]     point = 0, 0          prime = x, y (both repeatable)
//   [mf NAME]    potential = ...       phi1 = [[...],[...]]   phi0 = [[...]]
//                n1 = / n0 =           (only needed for empty matrices)
// '#' starts a comment. Polynomial payloads use the expression grammar.
ModelFile parse_model_file(const std::string& text, const std::string& path = "<string>");
ModelFile load_model_file(const std::string& path);

// Helpers shared with the CLI: parse "a, b, c" as a rational point or a
// comma-separated generator list as a prime, against a model.
PrimeLocus parse_point_spec(const ModelPtr& model, const std::string& spec);
PrimeLocus parse_prime_spec(const ModelPtr& model, const std::string& spec);

// Matrix syntax [[p, q], [r, s]]; the inverse of PolyMatrix::to_string.
PolyMatrix parse_matrix(const std::string& text, const VarsPtr& vars);

} // namespace mflocus
