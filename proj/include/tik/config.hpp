#pragma once

// Resource caps and tunables shared across the library.  All defaults are
// sized for desk-scale inputs (per-vertex dims <= 4, <= 24 indecomposables);
// exceeding a cap raises CapExceeded rather than silently truncating.

#include <cstdint>

namespace tik {

struct Caps {
    // Cap on p^d for enumerate_subspaces(d, p).
    std::uint64_t subspace_points = std::uint64_t(1) << 12;

    // Cap on p^{dim Hom} whenever a whole Hom space is enumerated
    // (isomorphism tests, split-pair searches, brick checks, oracles).
    std::uint64_t hom_points = std::uint64_t(1) << 20;

    // Cap on p^{#matrix entries} for the raw matrix-tuple scan inside
    // enumerate_indecomposables (per dimension vector).
    std::uint64_t tuple_points = std::uint64_t(1) << 24;

    // Path-length bound for the saturation check in algebra construction.
    unsigned path_length_bound = 12;

    // Multiplicity bound for the definition-level ICE/wide oracles.
    int max_mult = 2;

    // Worker count for the OpenMP kernels; 1 selects the serial reference.
    int jobs = 1;
};

} // namespace tik
