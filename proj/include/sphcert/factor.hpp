#pragma once

#include <random>

#include "sphcert/poly.hpp"

namespace sphcert {

// Irreducible factorization over Q, returned as primitive integer polynomials
// with positive leading coefficient, paired with multiplicities. The rational
// content of the input is dropped.
std::vector<std::pair<QPoly, int>> factor_q(const QPoly& f, std::mt19937_64& rng);

bool is_irreducible_q(const QPoly& f, std::mt19937_64& rng);

// Exact rational roots with multiplicities.
std::vector<std::pair<Rat, int>> rational_roots(const QPoly& f, std::mt19937_64& rng);

}  // namespace sphcert
