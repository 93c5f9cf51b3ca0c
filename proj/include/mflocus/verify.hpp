#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mflocus/tensorgeom.hpp"

namespace mflocus::verify {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// The golden-example and property batteries. Each function is self-contained
// (models are built internally) and deterministic for a given seed.

// Example: cone slice x*y = z*w, W = w - membership booleans at the three
// named primes.
std::vector<CheckResult> check_cone_example();
// Example: Q[x,y]/<x^n>, W = y for n in {2,3} - empty relative singular locus
// with a singular zero scheme.
std::vector<CheckResult> check_thickened_line_example();
// Constructive roundtrip at (0,0,a,0), a in {1,2,3}: witness identity and
// the support of the built object.
std::vector<CheckResult> check_witness_roundtrip();
// Three-way support agreement (in_support / fiber cohomology / trim rank)
// over a randomized corpus.
std::vector<CheckResult> check_support_agreement(unsigned n_objects = 200, unsigned n_points = 20,
                                                 std::uint64_t seed = 1);
// Koszul and tensor support laws on the 5^4 grid over random Koszul pairs.
std::vector<CheckResult> check_support_laws(unsigned n_pairs = 50, std::uint64_t seed = 1);
// Tensor nilpotence of multiplication by x over Q[x]/<x^2>: n = 2 with the
// zero homotopy.
std::vector<CheckResult> check_nilpotence_desk_case();
// Support-data axioms, lambda-invariance, and the generator-gap flag on the
// cone corpus.
std::vector<CheckResult> check_axioms_and_generator();
// Kernel algebra properties over a randomized corpus, plus Groebner
// certificate soundness on freshly computed bases.
std::vector<CheckResult> check_kernel_properties(unsigned n_objects = 40, std::uint64_t seed = 1);

// Suites by name: paper-examples, witness, support-agreement, support-laws,
// nilpotence, axioms, kernel, all.
std::vector<CheckResult> run_suite(const std::string& suite);
std::vector<std::string> suite_names();

bool all_pass(const std::vector<CheckResult>& checks);

} // namespace mflocus::verify
