#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pfano/matrix.hpp"

namespace pfano::matroid {

using matrix::BlockMatrix;

/// A constraint system: declared basis sets and circuit sets over a ground
/// set [n] with a fixed rank value. Families are kept disjoint; no circuit
/// may be contained in a basis; every basis has exactly rank_value elements.
struct MatroidConstraints {
    int ground_size = 0;
    int rank_value = 0;
    std::vector<std::vector<int>> basis_sets;
    std::vector<std::vector<int>> circuit_sets;
};

MatroidConstraints make_constraints(int n, int rank_value,
                                    std::vector<std::vector<int>> bases,
                                    std::vector<std::vector<int>> circuits);

/// Ground set [2p+3], rank p+1, one basis [p+1], and 2p+3 circuits:
/// ([p+1]\{i}) u {n-i} for i in [p+1]; {i, n-i, n} for i in [p+2:2p+2];
/// and [p+2:2p+2] itself.
MatroidConstraints p_fano_constraints(int p);

/// Same as p_fano_constraints(p) except [p+2:2p+2] is a basis instead of
/// a circuit.
MatroidConstraints p_nonfano_constraints(int p);

/// The canonical (p+1) x (2p+3) scalar witness: identity columns for
/// [p+1], complement-sum columns for [p+2:2p+2], all-ones for column n.
/// Represents the p-Fano constraints exactly in characteristic p and the
/// p-non-Fano constraints in every other characteristic.
BlockMatrix canonical_matrix(int p, const gf::PrimeField& field);

/// The (p+1) x (p+1) all-ones matrix with zero anti-diagonal; its rank is
/// p in characteristic p and p+1 otherwise. Equals canonical_matrix
/// columns [p+2:2p+2].
BlockMatrix ones_minus_antidiagonal(int p, const gf::PrimeField& field);

bool is_independent_set(const BlockMatrix& h, const std::vector<int>& s);

struct CircuitCertificate {
    std::vector<int> circuit;
    int pivot = 0;
    matrix::BlockCoefficients combination;
};

struct CircuitCheck {
    bool is_circuit = false;
    std::string detail;
    std::optional<CircuitCertificate> certificate;
};

/// Checks both the rank equalities (every one-element deletion keeps rank
/// (|S|-1)t) and, for every pivot choice, that the remaining blocks
/// reproduce the pivot block with all-invertible coefficients.
CircuitCheck is_circuit_set(const BlockMatrix& h, const std::vector<int>& s);

struct SetOutcome {
    std::vector<int> set;
    bool declared_basis = false;  // otherwise declared circuit
    bool ok = false;
    std::string detail;
};

struct RepresentationReport {
    bool pass = false;
    bool blocks_invertible = false;
    int first_singular_block = 0;  // 0 when none
    std::vector<SetOutcome> sets;
};

/// Verifies block invertibility plus every declared basis and circuit.
RepresentationReport check_representation(const BlockMatrix& h,
                                          const MatroidConstraints& c);

/// Rank of every subset of [n], stored by bitmask. n <= 20.
struct RankFunction {
    int ground_size = 0;
    std::vector<int> table;  // size 1 << ground_size

    int value(std::uint32_t mask) const { return table[mask]; }
};

struct RankFunctionReport {
    RankFunction fn;
    // subsets whose matrix rank is not divisible by t (t > 1 only); any
    // entry here means h is not a width-t representation of anything
    std::vector<std::uint32_t> non_integral;
};

RankFunctionReport rank_function_from_matrix(const BlockMatrix& h);

struct AxiomCheck {
    bool ok = false;
    std::string violation;
};

/// Cardinality bound, monotonicity, submodularity, all checked
/// exhaustively. n <= 12.
AxiomCheck check_matroid_axioms(const RankFunction& r);

}  // namespace pfano::matroid
