#include "pfano/matrix.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace pfano::matrix {

BlockMatrix::BlockMatrix(gf::PrimeField field, int rows, int block_width,
                         int num_blocks)
    : field_(field), rows_(rows), t_(block_width), n_(num_blocks) {
    if (rows < 0 || block_width < 1 || num_blocks < 0) {
        throw ShapeMismatchError("bad matrix shape");
    }
    data_.assign(static_cast<std::size_t>(rows) * block_width * num_blocks,
                 0);
}

BlockMatrix BlockMatrix::identity(gf::PrimeField field, int n) {
    BlockMatrix m(field, n, 1, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

void BlockMatrix::set(int r, int c, std::uint32_t v) {
    if (v >= field_.modulus()) {
        throw FieldMismatchError("entry " + std::to_string(v) +
                                 " is not canonical mod " +
                                 std::to_string(field_.modulus()));
    }
    data_[r * cols() + c] = v;
}

BlockMatrix BlockMatrix::select(const std::vector<int>& blocks) const {
    std::vector<int> sel = blocks;
    std::sort(sel.begin(), sel.end());
    sel.erase(std::unique(sel.begin(), sel.end()), sel.end());
    for (int b : sel) {
        if (b < 1 || b > n_) {
            throw ShapeMismatchError("block label " + std::to_string(b) +
                                     " outside [1, " + std::to_string(n_) +
                                     "]");
        }
    }
    BlockMatrix out(field_, rows_, t_, static_cast<int>(sel.size()));
    for (int k = 0; k < static_cast<int>(sel.size()); ++k) {
        for (int r = 0; r < rows_; ++r) {
            for (int off = 0; off < t_; ++off) {
                out.set_block(r, k + 1, off, block_at(r, sel[k], off));
            }
        }
    }
    return out;
}

BlockMatrix BlockMatrix::augment(const BlockMatrix& other) const {
    if (other.rows_ != rows_) throw ShapeMismatchError("row count mismatch");
    if (!(other.field_ == field_)) {
        throw FieldMismatchError("augmenting matrices over different fields");
    }
    BlockMatrix out(field_, rows_, 1, cols() + other.cols());
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols(); ++c) out.set(r, c, at(r, c));
        for (int c = 0; c < other.cols(); ++c) {
            out.set(r, cols() + c, other.at(r, c));
        }
    }
    return out;
}

RrefResult rref(const BlockMatrix& m) {
    const gf::PrimeField& f = m.field();
    BlockMatrix w = m;
    std::vector<int> pivots;
    int pivot_row = 0;
    for (int c = 0; c < w.cols() && pivot_row < w.rows(); ++c) {
        int pr = -1;
        for (int r = pivot_row; r < w.rows(); ++r) {
            if (w.at(r, c) != 0) { pr = r; break; }
        }
        if (pr < 0) continue;
        if (pr != pivot_row) {
            for (int cc = 0; cc < w.cols(); ++cc) {
                std::uint32_t tmp = w.at(pr, cc);
                w.set(pr, cc, w.at(pivot_row, cc));
                w.set(pivot_row, cc, tmp);
            }
        }
        std::uint32_t piv_inv = f.inv(w.at(pivot_row, c));
        for (int cc = c; cc < w.cols(); ++cc) {
            w.set(pivot_row, cc, f.mul(w.at(pivot_row, cc), piv_inv));
        }
        for (int r = 0; r < w.rows(); ++r) {
            if (r == pivot_row) continue;
            std::uint32_t factor = w.at(r, c);
            if (factor == 0) continue;
            for (int cc = c; cc < w.cols(); ++cc) {
                w.set(r, cc,
                      f.sub(w.at(r, cc), f.mul(factor, w.at(pivot_row, cc))));
            }
        }
        pivots.push_back(c + 1);
        ++pivot_row;
    }
    return {std::move(w), std::move(pivots)};
}

int rank(const BlockMatrix& m) {
    // forward elimination only; rref's back-substitution is not needed
    const gf::PrimeField& f = m.field();
    std::vector<std::uint32_t> w(m.rows() * m.cols());
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) w[r * m.cols() + c] = m.at(r, c);
    }
    int cols = m.cols();
    int pivot_row = 0;
    for (int c = 0; c < cols && pivot_row < m.rows(); ++c) {
        int pr = -1;
        for (int r = pivot_row; r < m.rows(); ++r) {
            if (w[r * cols + c] != 0) { pr = r; break; }
        }
        if (pr < 0) continue;
        if (pr != pivot_row) {
            for (int cc = c; cc < cols; ++cc) {
                std::swap(w[pr * cols + cc], w[pivot_row * cols + cc]);
            }
        }
        std::uint32_t piv_inv = f.inv(w[pivot_row * cols + c]);
        for (int r = pivot_row + 1; r < m.rows(); ++r) {
            std::uint32_t factor = f.mul(w[r * cols + c], piv_inv);
            if (factor == 0) continue;
            for (int cc = c; cc < cols; ++cc) {
                w[r * cols + cc] = f.sub(w[r * cols + cc],
                                         f.mul(factor, w[pivot_row * cols + cc]));
            }
        }
        ++pivot_row;
    }
    return pivot_row;
}

bool in_column_space(const BlockMatrix& m, const BlockMatrix& v) {
    if (v.rows() != m.rows()) throw ShapeMismatchError("row count mismatch");
    if (!(v.field() == m.field())) {
        throw FieldMismatchError("column-space test across fields");
    }
    return rank(m.augment(v)) == rank(m);
}

bool BlockCoefficients::all_invertible() const {
    for (bool b : invertible) {
        if (!b) return false;
    }
    return true;
}

std::optional<BlockCoefficients> solve_combination(const BlockMatrix& cols,
                                                   const BlockMatrix& target) {
    const int t = cols.block_width();
    if (target.rows() != cols.rows() || target.cols() != t) {
        throw ShapeMismatchError("target must be a single rows-by-t block");
    }
    RrefResult red = rref(cols.augment(target));
    // consistency: no pivot may fall in the augmented columns
    for (int p : red.pivot_cols) {
        if (p > cols.cols()) return std::nullopt;
    }
    // particular solution with free variables zero
    std::vector<std::vector<std::uint32_t>> x(
        cols.cols(), std::vector<std::uint32_t>(t, 0));
    for (std::size_t k = 0; k < red.pivot_cols.size(); ++k) {
        int pc = red.pivot_cols[k] - 1;
        for (int j = 0; j < t; ++j) {
            x[pc][j] = red.reduced.at(static_cast<int>(k), cols.cols() + j);
        }
    }
    BlockCoefficients out;
    for (int b = 1; b <= cols.num_blocks(); ++b) {
        BlockMatrix coeff(cols.field(), t, t, 1);
        for (int r = 0; r < t; ++r) {
            for (int j = 0; j < t; ++j) {
                coeff.set(r, j, x[(b - 1) * t + r][j]);
            }
        }
        out.blocks.push_back(b);
        out.invertible.push_back(rank(coeff) == t);
        out.coeff.push_back(std::move(coeff));
    }
    return out;
}

std::optional<std::vector<std::uint32_t>> solve_column(
    const BlockMatrix& m, const std::vector<std::uint32_t>& rhs) {
    if (static_cast<int>(rhs.size()) != m.rows()) {
        throw ShapeMismatchError("rhs length mismatch");
    }
    BlockMatrix r(m.field(), m.rows(), 1, 1);
    for (int i = 0; i < m.rows(); ++i) r.set(i, 0, rhs[i]);
    RrefResult red = rref(m.augment(r));
    for (int p : red.pivot_cols) {
        if (p > m.cols()) return std::nullopt;
    }
    std::vector<std::uint32_t> x(m.cols(), 0);
    for (std::size_t k = 0; k < red.pivot_cols.size(); ++k) {
        x[red.pivot_cols[k] - 1] =
            red.reduced.at(static_cast<int>(k), m.cols());
    }
    return x;
}

BlockMatrix multiply(const BlockMatrix& a, const BlockMatrix& b) {
    if (a.cols() != b.rows()) throw ShapeMismatchError("inner dim mismatch");
    if (!(a.field() == b.field())) {
        throw FieldMismatchError("multiplying matrices over different fields");
    }
    const gf::PrimeField& f = a.field();
    BlockMatrix out(f, a.rows(), b.block_width(), b.num_blocks());
    for (int r = 0; r < a.rows(); ++r) {
        for (int c = 0; c < b.cols(); ++c) {
            std::uint32_t acc = 0;
            for (int k = 0; k < a.cols(); ++k) {
                acc = f.add(acc, f.mul(a.at(r, k), b.at(k, c)));
            }
            out.set(r, c, acc);
        }
    }
    return out;
}

BlockMatrix scale_block(const BlockMatrix& m, int block,
                        const BlockMatrix& s) {
    const int t = m.block_width();
    if (s.rows() != t || s.cols() != t) {
        throw ShapeMismatchError("scaling block must be t-by-t");
    }
    const gf::PrimeField& f = m.field();
    BlockMatrix out = m;
    for (int r = 0; r < m.rows(); ++r) {
        for (int j = 0; j < t; ++j) {
            std::uint32_t acc = 0;
            for (int k = 0; k < t; ++k) {
                acc = f.add(acc, f.mul(m.block_at(r, block, k), s.at(k, j)));
            }
            out.set_block(r, block, j, acc);
        }
    }
    return out;
}

BlockMatrix random_invertible(int n, gf::PrimeField field,
                              std::uint64_t seed) {
    if (n < 1) throw ShapeMismatchError("size must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> dist(0, field.modulus() - 1);
    for (;;) {
        BlockMatrix m(field, n, 1, n);
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) m.set(r, c, dist(rng));
        }
        if (rank(m) == n) return m;
    }
}

std::vector<std::uint32_t> apply(const BlockMatrix& m,
                                 const std::vector<std::uint32_t>& x) {
    if (static_cast<int>(x.size()) != m.cols()) {
        throw ShapeMismatchError("vector length mismatch");
    }
    const gf::PrimeField& f = m.field();
    std::vector<std::uint32_t> y(m.rows(), 0);
    for (int r = 0; r < m.rows(); ++r) {
        std::uint32_t acc = 0;
        for (int c = 0; c < m.cols(); ++c) {
            acc = f.add(acc, f.mul(m.at(r, c), x[c]));
        }
        y[r] = acc;
    }
    return y;
}

}  // namespace pfano::matrix
