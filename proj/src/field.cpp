#include "qfc/field.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <string>
#include <utility>

namespace qfc {
namespace {

std::string fmt(const char* what, std::uint64_t v) {
    return std::string(what) + std::to_string(v);
}

unsigned poly_deg(std::uint64_t a) {
    // degree of a nonzero F_2[z] polynomial held as a bit vector
    return 63u - static_cast<unsigned>(std::countl_zero(a));
}

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t b) {
    const unsigned db = poly_deg(b);
    while (a != 0 && poly_deg(a) >= db) a ^= b << (poly_deg(a) - db);
    return a;
}

std::uint64_t poly_gcd(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
        std::uint64_t r = poly_mod(a, b);
        a = b;
        b = r;
    }
    return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> ps;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

// Multiplication in F_2[z]/(h), valid whether or not h is irreducible.
std::uint64_t ring_mul(std::uint64_t a, std::uint64_t b, std::uint64_t h, unsigned n) {
    std::uint64_t acc = 0;
    for (int i = static_cast<int>(n) - 1; i >= 0; --i) {
        acc <<= 1;
        if ((acc >> n) & 1) acc ^= h;
        if ((b >> i) & 1) acc ^= a;
    }
    return acc;
}

// Rabin's irreducibility test for h of degree n over F_2.
bool poly_irreducible(std::uint64_t h, unsigned n) {
    const std::uint64_t z0 = (n >= 2) ? 2 : (2 ^ h);
    auto frob_z = [&](unsigned k) {
        std::uint64_t t = z0;
        for (unsigned i = 0; i < k; ++i) t = ring_mul(t, t, h, n);
        return t;
    };
    if (frob_z(n) != z0) return false;
    for (std::uint64_t p : prime_factors(n)) {
        std::uint64_t d = frob_z(static_cast<unsigned>(n / p)) ^ z0;
        std::uint64_t g = (d == 0) ? h : poly_gcd(h, d);
        if (g != 1) return false;
    }
    return true;
}

bool parity(std::uint64_t x) { return (std::popcount(x) & 1) != 0; }

}  // namespace

Field::Field(unsigned e, unsigned m, std::uint64_t modulus_bits)
    : e_(e), m_(m), em_(e * m), mod_(modulus_bits) {
    if (e < 1 || m < 1) throw InvalidArgumentError("field parameters require e >= 1 and m >= 1");
    if (em_ > 48) throw InvalidArgumentError(fmt("field degree over F_2 too large: ", em_));
    if (e_ > 20) throw InvalidArgumentError(fmt("base field too large: 2^", e_));
    if (mod_ >> em_ != 1)
        throw InvalidArgumentError(fmt("modulus degree must equal e*m = ", em_));
    if (!poly_irreducible(mod_, em_))
        throw InvalidArgumentError("modulus is reducible over F_2");

    z_ = (em_ >= 2) ? 2 : (2 ^ mod_);

    // Base field = fixed points of x -> x^q, found as the F_2-kernel of
    // x -> x^q + x.  A coefficient mask in the kernel IS the element value.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pivots;  // (vec, combo)
    std::vector<felem> kernel_masks;
    for (unsigned k = 0; k < em_; ++k) {
        std::uint64_t v = frobenius(std::uint64_t{1} << k, e_) ^ (std::uint64_t{1} << k);
        std::uint64_t t = std::uint64_t{1} << k;
        for (const auto& [pv, pt] : pivots) {
            if (v != 0 && poly_deg(v) == poly_deg(pv)) {
                v ^= pv;
                t ^= pt;
            }
        }
        if (v == 0) {
            kernel_masks.push_back(t);
        } else {
            pivots.emplace_back(v, t);
            // keep pivots sorted by decreasing leading bit so reduction is a single pass
            std::sort(pivots.begin(), pivots.end(),
                      [](auto& a, auto& b) { return poly_deg(a.first) > poly_deg(b.first); });
        }
    }
    if (kernel_masks.size() != e_)
        throw InternalInconsistencyError("base field dimension mismatch");
    base_.reserve(q());
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << e_); ++s) {
        felem y = 0;
        for (unsigned b = 0; b < e_; ++b)
            if ((s >> b) & 1) y ^= kernel_masks[b];
        base_.push_back(y);
    }
    std::sort(base_.begin(), base_.end());

    // primitivity of z: its order in the unit group must be 2^(e*m) - 1
    const std::uint64_t n1 = order() - 1;
    z_primitive_ = (z_ != 0) && (pow(z_, n1) == 1);
    if (z_primitive_) {
        for (std::uint64_t p : prime_factors(n1)) {
            if (pow(z_, n1 / p) == 1) {
                z_primitive_ = false;
                break;
            }
        }
    }

    alpha_ = 0;
    for (felem y : base_) {
        if (y != 0 && base_trace_to_f2(y) == 1) {
            alpha_ = y;
            break;
        }
    }
    if (alpha_ == 0) throw InternalInconsistencyError("base field has no trace-one element");
}

felem Field::mul(felem a, felem b) const { return ring_mul(a, b, mod_, em_); }

felem Field::pow(felem a, std::uint64_t k) const {
    felem r = 1, base = a;
    while (k != 0) {
        if (k & 1) r = mul(r, base);
        base = mul(base, base);
        k >>= 1;
    }
    return r;
}

felem Field::inv(felem a) const {
    if (a == 0) throw DomainError("inverse of zero");
    return pow(a, order() - 2);
}

felem Field::frobenius(felem a, unsigned k) const {
    k %= em_;
    felem r = a;
    for (unsigned i = 0; i < k; ++i) r = mul(r, r);
    return r;
}

felem Field::rel_trace(felem a) const {
    felem acc = a, cur = a;
    for (unsigned i = 1; i < m_; ++i) {
        cur = frobenius(cur, e_);
        acc ^= cur;
    }
    return acc;
}

bool Field::in_base_field(felem a) const { return frobenius(a, e_) == a; }

unsigned Field::base_label(felem a) const {
    auto it = std::lower_bound(base_.begin(), base_.end(), a);
    if (it == base_.end() || *it != a)
        throw DomainError(fmt("element is not in the base field: ", a));
    return static_cast<unsigned>(it - base_.begin());
}

felem Field::base_trace_to_f2(felem a) const {
    if (!in_base_field(a)) throw DomainError("absolute trace defined here for base elements only");
    felem t = 0, cur = a;
    for (unsigned i = 0; i < e_; ++i) {
        t ^= cur;
        cur = mul(cur, cur);
    }
    if (t > 1) throw InternalInconsistencyError("absolute trace not in F_2");
    return t;
}

FieldPtr make_field(unsigned e, unsigned m, std::uint64_t modulus_bits) {
    return std::make_shared<const Field>(e, m, modulus_bits);
}

FieldPtr make_field(unsigned e, unsigned m) {
    return make_field(e, m, default_modulus(e * m));
}

std::uint64_t default_modulus(unsigned degree) {
    static const std::map<unsigned, std::uint64_t> table = {
        {1, 0b11},       // z + 1
        {2, 0b111},      // z^2 + z + 1
        {3, 0b1011},     // z^3 + z + 1
        {4, 0b10011},    // z^4 + z + 1
        {5, 0b100101},   // z^5 + z^2 + 1
        {6, 0b1000011},  // z^6 + z + 1
    };
    auto it = table.find(degree);
    if (it == table.end())
        throw InvalidArgumentError(fmt("no default modulus for degree ", degree));
    return it->second;
}

std::vector<felem> enumerate_field(const Field& f, std::uint64_t limit) {
    if (f.order() > limit)
        throw CapacityError(fmt("field enumeration exceeds limit: 2^", f.bit_degree()));
    std::vector<felem> out(f.order());
    for (std::uint64_t i = 0; i < f.order(); ++i) out[i] = i;
    return out;
}

namespace {
void check_same(const FieldElement& a, const FieldElement& b) {
    if (&a.field() != &b.field() && a.field() != b.field())
        throw SpecMismatchError("operands belong to different fields");
}
}  // namespace

FieldElement::FieldElement(FieldPtr f, felem v) : f_(std::move(f)), v_(v) {
    if (!f_) throw InvalidArgumentError("null field");
    if (v_ >= f_->order()) throw InvalidArgumentError(fmt("element out of range: ", v_));
}

FieldElement FieldElement::pow(std::uint64_t k) const { return {f_, f_->pow(v_, k)}; }
FieldElement FieldElement::inverse() const { return {f_, f_->inv(v_)}; }
FieldElement FieldElement::frobenius(unsigned k) const { return {f_, f_->frobenius(v_, k)}; }
FieldElement FieldElement::rel_trace() const { return {f_, f_->rel_trace(v_)}; }

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return {a.f_, a.field().add(a.v_, b.v_)};
}
FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return {a.f_, a.field().mul(a.v_, b.v_)};
}
FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return {a.f_, a.field().mul(a.v_, a.field().inv(b.v_))};
}
bool operator==(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return a.v_ == b.v_;
}
bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

Basis::Basis(FieldPtr f, std::vector<felem> elements)
    : f_(std::move(f)), eps_(std::move(elements)) {
    if (!f_) throw InvalidArgumentError("null field");
    const unsigned m = f_->degree(), e = f_->base_exponent(), em = f_->bit_degree();
    if (eps_.size() != m)
        throw InvalidArgumentError(fmt("basis needs exactly m elements, m = ", m));

    // gamma: least base element whose powers span F_q over F_2
    gamma_ = 1;
    if (e > 1) {
        gamma_ = 0;
        for (felem y : f_->base_elements()) {
            if (y == 0) continue;
            std::vector<std::uint64_t> rows;
            felem p = 1;
            for (unsigned j = 0; j < e; ++j) {
                rows.push_back(p);
                p = f_->mul(p, y);
            }
            unsigned rank = 0;
            std::vector<std::uint64_t> piv;
            for (std::uint64_t v : rows) {
                for (std::uint64_t pv : piv)
                    if (v != 0 && poly_deg(v) == poly_deg(pv)) v ^= pv;
                if (v != 0) {
                    piv.push_back(v);
                    std::sort(piv.begin(), piv.end(), std::greater<>());
                    ++rank;
                }
            }
            if (rank == e) {
                gamma_ = y;
                break;
            }
        }
        if (gamma_ == 0) throw InternalInconsistencyError("base field has no F_2 generator");
    }
    gamma_pows_.resize(e);
    gamma_pows_[0] = 1;
    for (unsigned j = 1; j < e; ++j) gamma_pows_[j] = f_->mul(gamma_pows_[j - 1], gamma_);

    // Invert the F_2-linear map (c_{ij}) -> sum c_{ij} gamma^j eps_i.
    std::vector<std::uint64_t> lhs(em), rhs(em);
    for (unsigned r = 0; r < em; ++r) rhs[r] = std::uint64_t{1} << r;
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < e; ++j) {
            const felem col = f_->mul(gamma_pows_[j], eps_[i]);
            const unsigned k = i * e + j;
            for (unsigned r = 0; r < em; ++r)
                if ((col >> r) & 1) lhs[r] |= std::uint64_t{1} << k;
        }
    for (unsigned col = 0; col < em; ++col) {
        unsigned piv = col;
        while (piv < em && !((lhs[piv] >> col) & 1)) ++piv;
        if (piv == em)
            throw InvalidArgumentError("basis elements are not linearly independent over F_q");
        std::swap(lhs[piv], lhs[col]);
        std::swap(rhs[piv], rhs[col]);
        for (unsigned r = 0; r < em; ++r) {
            if (r != col && ((lhs[r] >> col) & 1)) {
                lhs[r] ^= lhs[col];
                rhs[r] ^= rhs[col];
            }
        }
    }
    solve_ = std::move(rhs);
}

Basis Basis::polynomial(FieldPtr f) {
    std::vector<felem> eps(f->degree());
    felem cur = 1;
    for (unsigned i = 0; i < f->degree(); ++i) {
        eps[i] = cur;
        cur = f->mul(cur, f->z());
    }
    return Basis(std::move(f), std::move(eps));
}

std::vector<felem> Basis::coords(felem x) const {
    if (x >= f_->order()) throw InvalidArgumentError(fmt("element out of range: ", x));
    const unsigned m = f_->degree(), e = f_->base_exponent();
    std::vector<felem> c(m, 0);
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < e; ++j)
            if (parity(solve_[i * e + j] & x)) c[i] ^= gamma_pows_[j];
    return c;
}

felem Basis::from_coords(std::span<const felem> c) const {
    if (c.size() != f_->degree())
        throw InvalidArgumentError("coordinate vector has wrong length");
    felem acc = 0;
    for (unsigned i = 0; i < c.size(); ++i) {
        if (!f_->in_base_field(c[i]))
            throw InvalidArgumentError("coordinate is not a base-field element");
        acc ^= f_->mul(c[i], eps_[i]);
    }
    return acc;
}

}  // namespace qfc
