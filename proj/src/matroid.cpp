#include "pfano/matroid.hpp"

#include <algorithm>
#include <bit>

namespace pfano::matroid {

namespace {

std::vector<int> sorted_set(std::vector<int> s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::string set_to_string(const std::vector<int>& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + "}";
}

void require_prime_p(int p) {
    if (p < 2 || !gf::is_prime(static_cast<std::uint32_t>(p))) {
        throw NotPrimeError(static_cast<unsigned long>(p < 0 ? 0 : p));
    }
}

}  // namespace

MatroidConstraints make_constraints(int n, int rank_value,
                                    std::vector<std::vector<int>> bases,
                                    std::vector<std::vector<int>> circuits) {
    MatroidConstraints c;
    c.ground_size = n;
    c.rank_value = rank_value;
    for (auto& s : bases) c.basis_sets.push_back(sorted_set(std::move(s)));
    for (auto& s : circuits) c.circuit_sets.push_back(sorted_set(std::move(s)));

    auto check_range = [n](const std::vector<int>& s) {
        for (int e : s) {
            if (e < 1 || e > n) {
                throw ShapeMismatchError("set element " + std::to_string(e) +
                                         " outside ground set [1, " +
                                         std::to_string(n) + "]");
            }
        }
    };
    for (const auto& b : c.basis_sets) {
        check_range(b);
        if (static_cast<int>(b.size()) != rank_value) {
            throw ShapeMismatchError("basis " + set_to_string(b) +
                                     " does not have rank_value elements");
        }
    }
    for (const auto& s : c.circuit_sets) {
        check_range(s);
        for (const auto& b : c.basis_sets) {
            if (s == b) {
                throw ShapeMismatchError("set " + set_to_string(s) +
                                         " declared both basis and circuit");
            }
            if (subset_of(s, b)) {
                throw ShapeMismatchError("circuit " + set_to_string(s) +
                                         " contained in basis " +
                                         set_to_string(b));
            }
        }
    }
    return c;
}

MatroidConstraints p_fano_constraints(int p) {
    require_prime_p(p);
    const int n = 2 * p + 3;
    std::vector<std::vector<int>> bases, circuits;
    std::vector<int> base;
    for (int i = 1; i <= p + 1; ++i) base.push_back(i);
    bases.push_back(base);
    for (int i = 1; i <= p + 1; ++i) {
        std::vector<int> s;
        for (int j = 1; j <= p + 1; ++j) {
            if (j != i) s.push_back(j);
        }
        s.push_back(n - i);
        circuits.push_back(s);
    }
    for (int i = p + 2; i <= 2 * p + 2; ++i) {
        circuits.push_back({i, n - i, n});
    }
    std::vector<int> last;
    for (int i = p + 2; i <= 2 * p + 2; ++i) last.push_back(i);
    circuits.push_back(last);
    return make_constraints(n, p + 1, std::move(bases), std::move(circuits));
}

MatroidConstraints p_nonfano_constraints(int p) {
    MatroidConstraints c = p_fano_constraints(p);
    c.basis_sets.push_back(c.circuit_sets.back());
    c.circuit_sets.pop_back();
    return c;
}

BlockMatrix canonical_matrix(int p, const gf::PrimeField& field) {
    require_prime_p(p);
    const int n = 2 * p + 3;
    BlockMatrix h(field, p + 1, 1, n);
    for (int i = 1; i <= p + 1; ++i) h.set(i - 1, i - 1, 1);
    for (int i = p + 2; i <= 2 * p + 2; ++i) {
        for (int j = 1; j <= p + 1; ++j) {
            if (j != n - i) h.set(j - 1, i - 1, 1);
        }
    }
    for (int j = 1; j <= p + 1; ++j) h.set(j - 1, n - 1, 1);
    return h;
}

BlockMatrix ones_minus_antidiagonal(int p, const gf::PrimeField& field) {
    return canonical_matrix(p, field).select([p] {
        std::vector<int> s;
        for (int i = p + 2; i <= 2 * p + 2; ++i) s.push_back(i);
        return s;
    }());
}

bool is_independent_set(const BlockMatrix& h, const std::vector<int>& s) {
    std::vector<int> set = sorted_set(s);
    return matrix::rank(h.select(set)) ==
           static_cast<int>(set.size()) * h.block_width();
}

CircuitCheck is_circuit_set(const BlockMatrix& h, const std::vector<int>& s) {
    CircuitCheck out;
    std::vector<int> set = sorted_set(s);
    if (set.size() < 2) {
        throw ShapeMismatchError("circuit test needs at least two elements");
    }
    const int t = h.block_width();
    const int want = (static_cast<int>(set.size()) - 1) * t;
    if (matrix::rank(h.select(set)) != want) {
        out.detail = "rank of full set is not (|S|-1)t";
        return out;
    }
    for (int j : set) {
        std::vector<int> rest;
        for (int e : set) {
            if (e != j) rest.push_back(e);
        }
        if (matrix::rank(h.select(rest)) != want) {
            out.detail = "deleting " + std::to_string(j) + " drops the rank";
            return out;
        }
        auto combo = matrix::solve_combination(h.select(rest), h.select({j}));
        if (!combo) {
            out.detail = "block " + std::to_string(j) +
                         " is outside the span of the others";
            return out;
        }
        if (!combo->all_invertible()) {
            out.detail = "a coefficient block for pivot " + std::to_string(j) +
                         " is singular";
            return out;
        }
        if (!out.certificate) {
            CircuitCertificate cert;
            cert.circuit = set;
            cert.pivot = j;
            // remap solver's positional labels to ground-set labels
            combo->blocks = rest;
            cert.combination = std::move(*combo);
            out.certificate = std::move(cert);
        }
    }
    out.is_circuit = true;
    return out;
}

RepresentationReport check_representation(const BlockMatrix& h,
                                          const MatroidConstraints& c) {
    if (h.num_blocks() != c.ground_size) {
        throw ShapeMismatchError("matrix has " +
                                 std::to_string(h.num_blocks()) +
                                 " blocks, constraints expect " +
                                 std::to_string(c.ground_size));
    }
    RepresentationReport rep;
    rep.blocks_invertible = true;
    const int t = h.block_width();
    for (int b = 1; b <= h.num_blocks(); ++b) {
        if (matrix::rank(h.select({b})) != t) {
            rep.blocks_invertible = false;
            rep.first_singular_block = b;
            break;
        }
    }
    const int full_rank = matrix::rank(h);
    bool all_ok = rep.blocks_invertible;
    for (const auto& b : c.basis_sets) {
        SetOutcome o;
        o.set = b;
        o.declared_basis = true;
        if (!is_independent_set(h, b)) {
            o.detail = "not independent";
        } else if (full_rank != c.rank_value * t) {
            o.detail = "matrix rank is not rank_value*t";
        } else {
            o.ok = true;
        }
        all_ok = all_ok && o.ok;
        rep.sets.push_back(std::move(o));
    }
    for (const auto& s : c.circuit_sets) {
        SetOutcome o;
        o.set = s;
        CircuitCheck cc = is_circuit_set(h, s);
        o.ok = cc.is_circuit;
        o.detail = cc.detail;
        all_ok = all_ok && o.ok;
        rep.sets.push_back(std::move(o));
    }
    rep.pass = all_ok;
    return rep;
}

RankFunctionReport rank_function_from_matrix(const BlockMatrix& h) {
    const int n = h.num_blocks();
    if (n > 20) {
        throw GroundSetTooLargeError("ground set of " + std::to_string(n) +
                                     " exceeds the 20-element limit");
    }
    const int t = h.block_width();
    RankFunctionReport rep;
    rep.fn.ground_size = n;
    rep.fn.table.assign(std::size_t{1} << n, 0);
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
        std::vector<int> sel;
        for (int b = 0; b < n; ++b) {
            if (mask & (std::uint32_t{1} << b)) sel.push_back(b + 1);
        }
        int r = matrix::rank(h.select(sel));
        if (r % t != 0) rep.non_integral.push_back(mask);
        rep.fn.table[mask] = r / t;
    }
    return rep;
}

AxiomCheck check_matroid_axioms(const RankFunction& r) {
    const int n = r.ground_size;
    if (n > 12) {
        throw GroundSetTooLargeError(
            "axiom check enumerates all subset pairs; limit is 12 elements");
    }
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    AxiomCheck out;
    if (r.value(0) != 0) {
        out.violation = "f(empty) != 0";
        return out;
    }
    for (std::uint32_t m = 0; m <= full; ++m) {
        if (r.value(m) > std::popcount(m)) {
            out.violation = "cardinality bound fails on mask " +
                            std::to_string(m);
            return out;
        }
        for (int b = 0; b < n; ++b) {
            std::uint32_t with = m | (std::uint32_t{1} << b);
            if (r.value(m) > r.value(with)) {
                out.violation = "monotonicity fails adding element " +
                                std::to_string(b + 1);
                return out;
            }
        }
    }
    for (std::uint32_t a = 0; a <= full; ++a) {
        for (std::uint32_t b = a; b <= full; ++b) {
            if (r.value(a | b) + r.value(a & b) > r.value(a) + r.value(b)) {
                out.violation = "submodularity fails on masks " +
                                std::to_string(a) + "," + std::to_string(b);
                return out;
            }
        }
    }
    out.ok = true;
    return out;
}

}  // namespace pfano::matroid
