#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pfano/index_coding.hpp"
#include "pfano/matroid.hpp"

namespace pfano::search {

using indexcoding::Encoder;
using indexcoding::Family;
using indexcoding::IndexCodingInstance;
using matrix::BlockMatrix;
using matroid::MatroidConstraints;

inline constexpr std::uint64_t kDefaultBudget = 1'000'000'000;

struct SearchOutcome {
    bool found = false;
    std::optional<BlockMatrix> witness;
    std::uint64_t candidates = 0;   // enumeration nodes examined
    long double space = 0;          // size of the normalized space
    std::string normalization;
    std::int64_t elapsed_ms = 0;
};

/// Decides existence of a t=1 representation of the constraint system over
/// the given field.
///
/// For the p-Fano / p-non-Fano families the space is normalized first:
/// rank outcomes are invariant under invertible left-multiplication, so the
/// declared basis [p+1] can be fixed to the identity, and invariant under
/// nonzero column scaling, so one coefficient of each propagated column can
/// be fixed to 1. The circuits ([p+1]\{i}) u {n-i} then force each column
/// n-i to have support exactly [p+1]\{i} with nonzero coefficients, and the
/// circuit {1, 2p+2, n} forces column n to e_1 + b*column(2p+2). The
/// remaining (q-1)^(p*p) assignments are enumerated column by column, each
/// triple circuit {c, n-c, n} pruning as soon as column c is complete, and
/// [p+2:2p+2] plus a full constraint re-check deciding at the leaves.
///
/// Other constraint systems fall back to fixing the first declared basis to
/// the identity and enumerating every remaining column, guarded by the
/// budget.
SearchOutcome search_scalar_representation(
    const MatroidConstraints& c, const gf::PrimeField& field,
    std::uint64_t budget = kDefaultBudget, int workers = 1);

struct OptimalityDecision {
    bool achievable = false;
    std::optional<Encoder> encoder;
    int rate_rows = 0;
    int rate_t = 1;
    int mais_bound = 0;
    bool mais_exact = false;  // full branch-and-bound ran (m <= 40)
    std::optional<SearchOutcome> exhaustion;
    std::string note;
};

/// Achievable: the canonical rate-(p+1) scalar encoder satisfies every
/// user and matches the MAIS lower bound. Infeasible: carries the
/// exhaustion certificate for the corresponding matroid family; any
/// (p+1)-row scalar encoder for the instance would make its first 2p+3
/// blocks realize that family, so none exists. The certificate covers
/// t=1 only.
OptimalityDecision decide_family_optimality(
    Family family, int p, const gf::PrimeField& field,
    std::uint64_t budget = kDefaultBudget, int workers = 1);

struct LemmaReport {
    bool premises_hold = false;
    std::string premise_failure;
    bool conclusion_holds = false;
};

// Reduction steps from decoding constraints to matroid constraints, as
// checkable predicates. Premise failures are reported separately from a
// false conclusion; the conclusion is evaluated either way.

/// Acyclic interference + decodability force full column rank on M.
LemmaReport lemma2_independent(const IndexCodingInstance& inst,
                               const BlockMatrix& h,
                               const std::vector<int>& m_set);

/// A minimal cyclic set whose blocks reach the minimum possible rank
/// (|M|-1)t must be a circuit of the encoder.
LemmaReport lemma3_circuit(const IndexCodingInstance& inst,
                           const BlockMatrix& h,
                           const std::vector<int>& m_set);

/// If j interferes with every member of an independent set except l and
/// j's block lies in the span of the set, its column space equals l's.
LemmaReport lemma4_col_equal(const IndexCodingInstance& inst,
                             const BlockMatrix& h,
                             const std::vector<int>& m_set, int j, int l);

/// A minimal cyclic set that is matrix-independent, spans j's block, and
/// interferes with j everywhere forces {j} u M to be a circuit.
LemmaReport lemma5_adjoined_circuit(const IndexCodingInstance& inst,
                                    const BlockMatrix& h,
                                    const std::vector<int>& m_set, int j);

/// Basis [p+1], the complement circuits, and col(H^{n}) inside every
/// col(H^{i,n-i}) force each triple {i, n-i, n} to be a circuit.
LemmaReport lemma6_triple_circuits(const BlockMatrix& h, int p);

/// An acyclic M1 with M2 interfering everywhere: a rank cap of kt on
/// M1 u M2 caps rank(H^{M2}) at (k-|M1|)t.
LemmaReport lemma7_rank_drop(const IndexCodingInstance& inst,
                             const BlockMatrix& h,
                             const std::vector<int>& m1,
                             const std::vector<int>& m2, int k);

}  // namespace pfano::search
