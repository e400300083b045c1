#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pfano/matrix.hpp"

namespace pfano::indexcoding {

using matrix::BlockMatrix;

enum class Family { Custom, PFano, PNonFano };

std::string family_name(Family f);

/// An instance is the list of interfering sets B_i. User i's side
/// information is the complement [m] \ (B_i u {i}). Users are 1-indexed.
struct IndexCodingInstance {
    int m = 0;
    Family family = Family::Custom;
    int p = 0;  // family parameter; 0 for custom
    std::vector<std::vector<int>> interfering;  // interfering[i-1], sorted

    const std::vector<int>& interfering_of(int user) const {
        return interfering[user - 1];
    }
    std::vector<int> side_info(int user) const;
    bool interferes(int user, int other) const;
    /// other is in user's side information (arc user -> other in the
    /// side-information digraph)
    bool knows(int user, int other) const {
        return user != other && !interferes(user, other);
    }
};

IndexCodingInstance make_instance(int m,
                                  std::vector<std::vector<int>> interfering,
                                  Family family = Family::Custom, int p = 0);

// user-index layout of the family instances
int z_index(int p, int l, int j);         // l, j in [p+1]
int zprime_index(int p, int j);           // j in [p+1]
int zdprime_index(int p, int l, int j);   // l in [p+1], j in [p-2]

/// m = 2p^2+4p+3 users: the ground users [2p+3], p+1 groups Z_l of p+1
/// users, p+1 users Z', and p+1 groups Z''_l of p-2 users (empty at p=2).
IndexCodingInstance build_p_fano_instance(int p);

/// Same as the p-Fano instance except users [p+2:2p+2] mutually interfere
/// (each with all of that range but itself) and user n interferes with
/// nobody.
IndexCodingInstance build_p_nonfano_instance(int p);

struct Encoder {
    BlockMatrix matrix;

    int rate_rows() const { return matrix.rows(); }
    int rate_t() const { return matrix.block_width(); }
};

/// The m-block scalar encoder: ground columns from the canonical matroid
/// witness, identity columns for each Z_l, shifted identity columns for Z'
/// and Z''.
Encoder canonical_encoder(int p, const gf::PrimeField& field);

struct UserDecodeOutcome {
    int user = 0;
    int rank_with = 0;
    int rank_without = 0;
    bool ok = false;
};

struct DecodingReport {
    bool all_ok = false;
    std::vector<UserDecodeOutcome> users;
};

/// User i decodes iff adjoining its block to the interfering blocks raises
/// the rank by exactly t.
DecodingReport check_decoding(const Encoder& enc,
                              const IndexCodingInstance& inst);

/// Encodes y = Hx and decodes every user from y plus its side information.
/// Throws NotDecodableError when the decoding condition fails somewhere.
/// Returns the m*t recovered message symbols in user order.
std::vector<std::uint32_t> simulate_round(
    const Encoder& enc, const IndexCodingInstance& inst,
    const std::vector<std::uint32_t>& messages);

std::vector<std::uint32_t> random_messages(const gf::PrimeField& field,
                                           int m, int t, std::uint64_t seed);

/// B_i n M = M \ {i} for every i in M: mutual interference, no arcs.
bool is_instance_independent(const IndexCodingInstance& inst,
                             const std::vector<int>& users);

/// The side-information digraph restricted to M is exactly one directed
/// Hamiltonian cycle (every user knows precisely its successor in M).
bool is_minimal_cyclic(const IndexCodingInstance& inst,
                       const std::vector<int>& users);

/// No directed cycle inside M; equivalently no subset of M is minimal
/// cyclic, since a shortest directed cycle has no chords.
bool is_acyclic(const IndexCodingInstance& inst,
                const std::vector<int>& users);

struct MaisResult {
    int size = 0;
    std::vector<int> witness;
};

/// Exact maximum acyclic induced subset, by branch and bound over kept
/// vertices with the remaining-count bound. m <= 40.
MaisResult mais(const IndexCodingInstance& inst);

struct RateReport {
    int mais_bound = 0;
    std::vector<int> mais_witness;
    bool have_rate = false;
    int rate_rows = 0;
    int rate_t = 1;
    bool optimal = false;  // achieved rate equals the MAIS lower bound
};

RateReport broadcast_rate_report(const IndexCodingInstance& inst,
                                 const Encoder* enc);

}  // namespace pfano::indexcoding
