#include "pfano/gf.hpp"

namespace pfano::gf {

bool is_prime(std::uint32_t q) {
    if (q < 2) return false;
    if (q % 2 == 0) return q == 2;
    for (std::uint64_t d = 3; d * d <= q; d += 2) {
        if (q % d == 0) return false;
    }
    return true;
}

PrimeField::PrimeField(std::uint32_t q) : q_(q) {
    if (!is_prime(q)) throw NotPrimeError(q);
}

FieldElement PrimeField::element(std::uint32_t canonical) const {
    if (canonical >= q_) {
        throw FieldMismatchError("value " + std::to_string(canonical) +
                                 " is not a canonical residue mod " +
                                 std::to_string(q_));
    }
    return FieldElement(canonical, q_);
}

FieldElement PrimeField::zero() const { return FieldElement(0, q_); }
FieldElement PrimeField::one() const { return FieldElement(1 % q_, q_); }

std::uint32_t PrimeField::inv(std::uint32_t a) const {
    if (a == 0) throw DivisionByZeroError("inverse of zero in GF(" +
                                          std::to_string(q_) + ")");
    // extended Euclid on (a, q)
    std::int64_t r0 = a, r1 = q_, s0 = 1, s1 = 0;
    while (r1 != 0) {
        std::int64_t k = r0 / r1;
        std::int64_t r2 = r0 - k * r1;
        std::int64_t s2 = s0 - k * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    return reduce(s0);
}

namespace {
void require_same_field(std::uint32_t qa, std::uint32_t qb) {
    if (qa != qb) {
        throw FieldMismatchError("elements of GF(" + std::to_string(qa) +
                                 ") and GF(" + std::to_string(qb) +
                                 ") cannot be combined");
    }
}
}  // namespace

FieldElement FieldElement::operator+(FieldElement o) const {
    require_same_field(q_, o.q_);
    std::uint32_t s = value_ + o.value_;
    return FieldElement(s >= q_ ? s - q_ : s, q_);
}

FieldElement FieldElement::operator-(FieldElement o) const {
    require_same_field(q_, o.q_);
    return FieldElement(value_ >= o.value_ ? value_ - o.value_
                                           : value_ + q_ - o.value_, q_);
}

FieldElement FieldElement::operator*(FieldElement o) const {
    require_same_field(q_, o.q_);
    std::uint64_t p = static_cast<std::uint64_t>(value_) * o.value_;
    return FieldElement(static_cast<std::uint32_t>(p % q_), q_);
}

FieldElement FieldElement::operator-() const {
    return FieldElement(value_ == 0 ? 0 : q_ - value_, q_);
}

FieldElement FieldElement::inverse() const {
    return FieldElement(field().inv(value_), q_);
}

}  // namespace pfano::gf
