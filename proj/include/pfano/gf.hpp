#pragma once

#include <cstdint>

#include "pfano/errors.hpp"

namespace pfano::gf {

class FieldElement;

/// Prime field GF(q). Primality is verified at construction; all element
/// values are canonical residues in [0, q). The characteristic equals q.
class PrimeField {
public:
    explicit PrimeField(std::uint32_t q);

    std::uint32_t modulus() const { return q_; }
    std::uint32_t characteristic() const { return q_; }

    FieldElement element(std::uint32_t canonical) const;
    FieldElement zero() const;
    FieldElement one() const;

    // Raw residue arithmetic. Inputs must already be canonical; these are
    // the primitives the matrix kernels run on.
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t s = a + b;
        return s >= q_ ? s - q_ : s;
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
        return a >= b ? a - b : a + q_ - b;
    }
    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : q_ - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return static_cast<std::uint32_t>(
            (static_cast<std::uint64_t>(a) * b) % q_);
    }
    std::uint32_t inv(std::uint32_t a) const;
    std::uint32_t reduce(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(q_);
        if (r < 0) r += q_;
        return static_cast<std::uint32_t>(r);
    }

    bool operator==(const PrimeField&) const = default;

private:
    std::uint32_t q_;
};

bool is_prime(std::uint32_t q);

/// A canonical residue tagged with its modulus. Mixing elements of
/// different fields is rejected.
class FieldElement {
public:
    FieldElement() : value_(0), q_(2) {}

    std::uint32_t value() const { return value_; }
    PrimeField field() const { return PrimeField(q_); }

    FieldElement operator+(FieldElement o) const;
    FieldElement operator-(FieldElement o) const;
    FieldElement operator*(FieldElement o) const;
    FieldElement operator-() const;
    FieldElement inverse() const;

    bool operator==(const FieldElement&) const = default;

private:
    friend class PrimeField;
    FieldElement(std::uint32_t v, std::uint32_t q) : value_(v), q_(q) {}

    std::uint32_t value_;
    std::uint32_t q_;
};

}  // namespace pfano::gf
