#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "leibniz/linalg.hpp"
#include "leibniz/scalar.hpp"

namespace leibniz {

/// Primes just below 2^55, generated deterministically.
std::uint64_t modular_prime(std::size_t i);

/// Wang rational reconstruction of u mod m with numerator and denominator at most
/// sqrt(m/2). Returns nullopt when no such fraction exists.
std::optional<Scalar> rational_reconstruction(const Integer& u, const Integer& m);

/// Reduced echelon form computed modulo several primes and lifted by CRT plus rational
/// reconstruction. The lift is accepted only after every input row is checked, in exact
/// arithmetic, to lie in the span of the candidate rows; since rank mod p never exceeds the
/// rational rank, an accepted result is the exact reduced echelon form. Returns nullopt when
/// no lift verifies within max_primes primes.
std::optional<SparseRref> modular_rref(const SparseMatrix& m, std::size_t max_primes = 12);

}  // namespace leibniz
