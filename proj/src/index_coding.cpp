#include "pfano/index_coding.hpp"

#include <algorithm>
#include <random>

#include "pfano/matroid.hpp"

namespace pfano::indexcoding {

namespace {

std::vector<int> sorted_set(std::vector<int> s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

void require_prime_p(int p) {
    if (p < 2 || !gf::is_prime(static_cast<std::uint32_t>(p))) {
        throw NotPrimeError(static_cast<unsigned long>(p < 0 ? 0 : p));
    }
}

// cyclic successor of j in [1..p+1] that skips l
int succ_skipping(int j, int l, int p) {
    int s = j % (p + 1) + 1;
    if (s == l) s = s % (p + 1) + 1;
    return s;
}

}  // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::PFano: return "p-fano";
        case Family::PNonFano: return "p-nonfano";
        default: return "custom";
    }
}

std::vector<int> IndexCodingInstance::side_info(int user) const {
    std::vector<int> a;
    for (int v = 1; v <= m; ++v) {
        if (v != user && !interferes(user, v)) a.push_back(v);
    }
    return a;
}

bool IndexCodingInstance::interferes(int user, int other) const {
    const auto& b = interfering[user - 1];
    return std::binary_search(b.begin(), b.end(), other);
}

IndexCodingInstance make_instance(int m,
                                  std::vector<std::vector<int>> interfering,
                                  Family family, int p) {
    if (static_cast<int>(interfering.size()) != m) {
        throw ShapeMismatchError("expected one interfering set per user");
    }
    IndexCodingInstance inst;
    inst.m = m;
    inst.family = family;
    inst.p = p;
    for (int i = 1; i <= m; ++i) {
        auto b = sorted_set(std::move(interfering[i - 1]));
        for (int e : b) {
            if (e < 1 || e > m || e == i) {
                throw ShapeMismatchError(
                    "interfering set of user " + std::to_string(i) +
                    " contains invalid user " + std::to_string(e));
            }
        }
        inst.interfering.push_back(std::move(b));
    }
    if (family != Family::Custom && m != 2 * p * p + 4 * p + 3) {
        throw ShapeMismatchError("family instance must have 2p^2+4p+3 users");
    }
    return inst;
}

int z_index(int p, int l, int j) { return (p + 1) * (l + 1) + 1 + j; }

int zprime_index(int p, int j) { return p * p + 4 * p + 4 + j; }

int zdprime_index(int p, int l, int j) {
    return p * p + (l + 4) * p + 7 - 2 * l + j;
}

IndexCodingInstance build_p_fano_instance(int p) {
    require_prime_p(p);
    const int n = 2 * p + 3;
    const int m = 2 * p * p + 4 * p + 3;
    std::vector<std::vector<int>> b(m);

    auto zdl_set = [p](int l) {
        std::vector<int> z;
        for (int j = 1; j <= p - 2; ++j) z.push_back(zdprime_index(p, l, j));
        return z;
    };

    for (int i = 1; i <= p + 1; ++i) {
        std::vector<int>& bi = b[i - 1];
        for (int j = 1; j <= p + 1; ++j) {
            if (j != i) bi.push_back(j);
        }
        bi.push_back(n - i);
        for (int l = 1; l <= p + 1; ++l) {
            for (int j = 1; j <= p + 1; ++j) {
                if (j != i) bi.push_back(z_index(p, l, j));
            }
        }
    }
    // one directed cycle on [p+2:2p+2]: each user interferes with the whole
    // range except itself and its cyclic successor
    for (int i = p + 2; i <= 2 * p + 2; ++i) {
        int succ = (i == 2 * p + 2) ? p + 2 : i + 1;
        for (int v = p + 2; v <= 2 * p + 2; ++v) {
            if (v != i && v != succ) b[i - 1].push_back(v);
        }
    }
    for (int v = p + 2; v <= 2 * p + 2; ++v) b[n - 1].push_back(v);

    for (int l = 1; l <= p + 1; ++l) {
        for (int j = 1; j <= p + 1; ++j) {
            if (j == l) continue;  // B of z(l,l) stays empty
            std::vector<int>& bi = b[z_index(p, l, j) - 1];
            int skip = succ_skipping(j, l, p);
            for (int k = 1; k <= p + 1; ++k) {
                if (k == l || k == j || k == skip) continue;
                bi.push_back(z_index(p, l, k));
            }
            bi.push_back(n - l);
        }
        std::vector<int>& bz = b[zprime_index(p, l) - 1];
        bz = {n - l, n, z_index(p, l, l)};
        for (int v : zdl_set(l)) bz.push_back(v);
        for (int j = 1; j <= p - 2; ++j) {
            std::vector<int>& bd = b[zdprime_index(p, l, j) - 1];
            bd = {n - l, n, z_index(p, l, l), zprime_index(p, l)};
            for (int v : zdl_set(l)) {
                if (v != zdprime_index(p, l, j)) bd.push_back(v);
            }
        }
    }
    return make_instance(m, std::move(b), Family::PFano, p);
}

IndexCodingInstance build_p_nonfano_instance(int p) {
    IndexCodingInstance inst = build_p_fano_instance(p);
    const int n = 2 * p + 3;
    for (int i = p + 2; i <= 2 * p + 2; ++i) {
        std::vector<int> bi;
        for (int v = p + 2; v <= 2 * p + 2; ++v) {
            if (v != i) bi.push_back(v);
        }
        inst.interfering[i - 1] = std::move(bi);
    }
    inst.interfering[n - 1].clear();
    inst.family = Family::PNonFano;
    return inst;
}

Encoder canonical_encoder(int p, const gf::PrimeField& field) {
    require_prime_p(p);
    const int n = 2 * p + 3;
    const int m = 2 * p * p + 4 * p + 3;
    BlockMatrix h(field, p + 1, 1, m);
    BlockMatrix ground = matroid::canonical_matrix(p, field);
    for (int c = 1; c <= n; ++c) {
        for (int r = 0; r <= p; ++r) h.set(r, c - 1, ground.at(r, c - 1));
    }
    for (int l = 1; l <= p + 1; ++l) {
        for (int j = 1; j <= p + 1; ++j) {
            h.set(j - 1, z_index(p, l, j) - 1, 1);
        }
        int row = (l <= p) ? l + 1 : 1;
        h.set(row - 1, zprime_index(p, l) - 1, 1);
        for (int j = 1; j <= p - 2; ++j) {
            int rr = (l + j <= p) ? l + j + 1 : l + j - p;
            h.set(rr - 1, zdprime_index(p, l, j) - 1, 1);
        }
    }
    return Encoder{std::move(h)};
}

DecodingReport check_decoding(const Encoder& enc,
                              const IndexCodingInstance& inst) {
    const BlockMatrix& h = enc.matrix;
    if (h.num_blocks() != inst.m) {
        throw ShapeMismatchError("encoder has " +
                                 std::to_string(h.num_blocks()) +
                                 " blocks for " + std::to_string(inst.m) +
                                 " users");
    }
    DecodingReport rep;
    rep.all_ok = true;
    const int t = h.block_width();
    for (int i = 1; i <= inst.m; ++i) {
        UserDecodeOutcome o;
        o.user = i;
        std::vector<int> with = inst.interfering_of(i);
        o.rank_without = matrix::rank(h.select(with));
        with.push_back(i);
        o.rank_with = matrix::rank(h.select(with));
        o.ok = (o.rank_with == o.rank_without + t);
        rep.all_ok = rep.all_ok && o.ok;
        rep.users.push_back(o);
    }
    return rep;
}

std::vector<std::uint32_t> simulate_round(
    const Encoder& enc, const IndexCodingInstance& inst,
    const std::vector<std::uint32_t>& messages) {
    const BlockMatrix& h = enc.matrix;
    const int t = h.block_width();
    if (static_cast<int>(messages.size()) != inst.m * t) {
        throw ShapeMismatchError("expected m*t message symbols");
    }
    DecodingReport rep = check_decoding(enc, inst);
    if (!rep.all_ok) {
        for (const auto& u : rep.users) {
            if (!u.ok) {
                throw NotDecodableError("user " + std::to_string(u.user) +
                                        " cannot decode under this encoder");
            }
        }
    }
    const gf::PrimeField& f = h.field();
    std::vector<std::uint32_t> y = matrix::apply(h, messages);

    std::vector<std::uint32_t> decoded(inst.m * t, 0);
    for (int i = 1; i <= inst.m; ++i) {
        // residual = y minus the contribution of the side information
        std::vector<std::uint32_t> residual = y;
        for (int l : inst.side_info(i)) {
            for (int r = 0; r < h.rows(); ++r) {
                for (int off = 0; off < t; ++off) {
                    residual[r] = f.sub(
                        residual[r],
                        f.mul(h.block_at(r, l, off),
                              messages[(l - 1) * t + off]));
                }
            }
        }
        std::vector<int> unknowns = inst.interfering_of(i);
        unknowns.push_back(i);
        std::sort(unknowns.begin(), unknowns.end());
        BlockMatrix sub = h.select(unknowns);
        auto sol = matrix::solve_column(sub, residual);
        if (!sol) {
            throw NotDecodableError("inconsistent residual system for user " +
                                    std::to_string(i));
        }
        int pos = static_cast<int>(
            std::lower_bound(unknowns.begin(), unknowns.end(), i) -
            unknowns.begin());
        for (int off = 0; off < t; ++off) {
            decoded[(i - 1) * t + off] = (*sol)[pos * t + off];
        }
    }
    return decoded;
}

std::vector<std::uint32_t> random_messages(const gf::PrimeField& field,
                                           int m, int t, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> dist(0, field.modulus() - 1);
    std::vector<std::uint32_t> x(static_cast<std::size_t>(m) * t);
    for (auto& v : x) v = dist(rng);
    return x;
}

bool is_instance_independent(const IndexCodingInstance& inst,
                             const std::vector<int>& users) {
    std::vector<int> set = sorted_set(users);
    for (int i : set) {
        for (int v : set) {
            if (v != i && !inst.interferes(i, v)) return false;
        }
    }
    return true;
}

bool is_minimal_cyclic(const IndexCodingInstance& inst,
                       const std::vector<int>& users) {
    std::vector<int> set = sorted_set(users);
    if (set.size() < 2) return false;
    // every vertex must know exactly one member; the successor map must be
    // a single cycle through all of them
    std::vector<int> succ(set.size(), -1);
    for (std::size_t k = 0; k < set.size(); ++k) {
        int count = 0;
        for (std::size_t j = 0; j < set.size(); ++j) {
            if (j != k && inst.knows(set[k], set[j])) {
                succ[k] = static_cast<int>(j);
                ++count;
            }
        }
        if (count != 1) return false;
    }
    std::size_t visited = 0;
    int cur = 0;
    do {
        cur = succ[cur];
        ++visited;
    } while (cur != 0 && visited <= set.size());
    return visited == set.size();
}

namespace {

// colors: 0 new, 1 on the current path, 2 done
bool dfs_finds_cycle(const IndexCodingInstance& inst,
                     const std::vector<int>& set, std::vector<int>& color,
                     int v) {
    color[v] = 1;
    for (int w = 0; w < static_cast<int>(set.size()); ++w) {
        if (w == v || !inst.knows(set[v], set[w])) continue;
        if (color[w] == 1) return true;
        if (color[w] == 0 && dfs_finds_cycle(inst, set, color, w)) return true;
    }
    color[v] = 2;
    return false;
}

}  // namespace

bool is_acyclic(const IndexCodingInstance& inst,
                const std::vector<int>& users) {
    std::vector<int> set = sorted_set(users);
    std::vector<int> color(set.size(), 0);
    for (int s = 0; s < static_cast<int>(set.size()); ++s) {
        if (color[s] == 0 && dfs_finds_cycle(inst, set, color, s)) {
            return false;
        }
    }
    return true;
}

namespace {

struct MaisSearch {
    int m;
    std::vector<std::uint64_t> out;  // out[v] bit w set iff arc v->w
    int best = 0;
    std::uint64_t best_set = 0;

    bool closes_cycle(std::uint64_t kept, int v) const {
        // kept is acyclic; a new cycle must pass through v
        std::uint64_t inside = kept | (std::uint64_t{1} << v);
        std::uint64_t seen = 0;
        std::uint64_t frontier = out[v] & inside;
        while (frontier) {
            if (frontier & (std::uint64_t{1} << v)) return true;
            seen |= frontier;
            std::uint64_t next = 0;
            std::uint64_t f = frontier;
            while (f) {
                int w = std::countr_zero(f);
                f &= f - 1;
                next |= out[w] & inside;
            }
            frontier = next & ~seen;
            if (frontier & (std::uint64_t{1} << v)) return true;
        }
        return false;
    }

    void dfs(int idx, std::uint64_t kept, int kept_count) {
        if (kept_count + (m - idx) <= best) return;
        if (idx == m) return;
        if (!closes_cycle(kept, idx)) {
            std::uint64_t with = kept | (std::uint64_t{1} << idx);
            if (kept_count + 1 > best) {
                best = kept_count + 1;
                best_set = with;
            }
            dfs(idx + 1, with, kept_count + 1);
        }
        dfs(idx + 1, kept, kept_count);
    }
};

}  // namespace

MaisResult mais(const IndexCodingInstance& inst) {
    if (inst.m > 40) {
        throw TooLargeError("exact MAIS search is limited to 40 users");
    }
    MaisSearch s;
    s.m = inst.m;
    s.out.assign(inst.m, 0);
    for (int u = 1; u <= inst.m; ++u) {
        for (int v = 1; v <= inst.m; ++v) {
            if (inst.knows(u, v)) s.out[u - 1] |= std::uint64_t{1} << (v - 1);
        }
    }
    s.dfs(0, 0, 0);
    MaisResult res;
    res.size = s.best;
    for (int v = 0; v < inst.m; ++v) {
        if (s.best_set & (std::uint64_t{1} << v)) res.witness.push_back(v + 1);
    }
    if (!is_acyclic(inst, res.witness) ||
        static_cast<int>(res.witness.size()) != res.size) {
        throw Error("MAIS witness failed its own re-check");
    }
    return res;
}

RateReport broadcast_rate_report(const IndexCodingInstance& inst,
                                 const Encoder* enc) {
    RateReport rep;
    MaisResult mr = mais(inst);
    rep.mais_bound = mr.size;
    rep.mais_witness = mr.witness;
    if (enc != nullptr) {
        DecodingReport dr = check_decoding(*enc, inst);
        if (!dr.all_ok) {
            throw NotDecodableError(
                "encoder does not satisfy every user; no rate achieved");
        }
        rep.have_rate = true;
        rep.rate_rows = enc->rate_rows();
        rep.rate_t = enc->rate_t();
        rep.optimal = (rep.rate_rows == rep.mais_bound * rep.rate_t);
    }
    return rep;
}

}  // namespace pfano::indexcoding
