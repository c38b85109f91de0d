#pragma once

#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "girth7/errors.hpp"

namespace girth7 {

namespace detail {

// Dense polynomials over GF(p), coefficients ascending by degree.
using Poly = std::vector<std::uint32_t>;

inline void poly_trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f,
                        std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<std::uint32_t>(
                (r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
    }
    // f is monic; cancel leading coefficients top-down
    const std::size_t deg_f = f.size() - 1;
    for (std::size_t i = r.size(); i-- > deg_f;) {
        const std::uint32_t c = r[i];
        if (c == 0) continue;
        r[i] = 0;
        for (std::size_t j = 0; j < deg_f; ++j) {
            const std::uint64_t sub = static_cast<std::uint64_t>(c) * f[j] % p;
            r[i - deg_f + j] =
                static_cast<std::uint32_t>((r[i - deg_f + j] + p - sub) % p);
        }
    }
    poly_trim(r);
    return r;
}

inline Poly poly_powmod(Poly base, std::uint64_t n, const Poly& f,
                        std::uint32_t p) {
    Poly result{1};
    while (n > 0) {
        if (n & 1) result = poly_mulmod(result, base, f, p);
        base = poly_mulmod(base, base, f, p);
        n >>= 1;
    }
    return result;
}

inline Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
    const std::size_t deg_m = m.size() - 1;
    const std::uint64_t lead_inv = [&] {
        // inverse of m's leading coefficient mod p by Fermat
        std::uint64_t base = m.back(), acc = 1, n = p - 2;
        while (n > 0) {
            if (n & 1) acc = acc * base % p;
            base = base * base % p;
            n >>= 1;
        }
        return acc;
    }();
    poly_trim(a);
    while (a.size() > deg_m) {
        const std::size_t i = a.size() - 1;
        const std::uint64_t c = a[i] * lead_inv % p;
        for (std::size_t j = 0; j < m.size(); ++j) {
            const std::uint64_t sub = c * m[j] % p;
            a[i - deg_m + j] =
                static_cast<std::uint32_t>((a[i - deg_m + j] + p - sub) % p);
        }
        poly_trim(a);
    }
    return a;
}

inline Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

inline std::uint32_t poly_eval(const Poly& f, std::uint32_t x,
                               std::uint32_t p) {
    std::uint64_t acc = 0;
    for (std::size_t i = f.size(); i-- > 0;)
        acc = (acc * x + f[i]) % p;
    return static_cast<std::uint32_t>(acc);
}

// Irreducibility over GF(p): root check suffices for degree <= 3,
// Rabin's test (x^{p^e} = x and gcd conditions) for higher degrees.
inline bool poly_irreducible(const Poly& f, std::uint32_t p) {
    const std::size_t e = f.size() - 1;
    if (e <= 3) {
        // degree 2 or 3: reducible iff it has a linear factor, i.e. a root
        for (std::uint32_t x = 0; x < p; ++x)
            if (poly_eval(f, x, p) == 0) return false;
        return true;
    }
    const Poly x_poly{0, 1};
    auto p_pow = [&](std::size_t n) {
        std::uint64_t r = 1;
        for (std::size_t i = 0; i < n; ++i) r *= p;
        return r;
    };
    // x^{p^e} == x (mod f)
    Poly frob = poly_powmod(x_poly, p_pow(e), f, p);
    if (frob != x_poly) return false;
    // gcd(x^{p^{e/r}} - x, f) must be constant for every prime r | e
    std::size_t m = e;
    for (std::size_t r = 2; r * r <= m; ++r) {
        if (m % r != 0) continue;
        while (m % r == 0) m /= r;
        Poly d = poly_powmod(x_poly, p_pow(e / r), f, p);
        // d - x
        if (d.size() < 2) d.resize(2, 0);
        d[1] = (d[1] + p - 1) % p;
        poly_trim(d);
        Poly g = poly_gcd(f, d, p);
        if (g.size() > 1) return false;
    }
    if (m > 1) {
        Poly d = poly_powmod(x_poly, p_pow(e / m), f, p);
        if (d.size() < 2) d.resize(2, 0);
        d[1] = (d[1] + p - 1) % p;
        poly_trim(d);
        Poly g = poly_gcd(f, d, p);
        if (g.size() > 1) return false;
    }
    return true;
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Immutable arithmetic core shared by FieldSpec copies and their elements.
struct FieldCore {
    std::uint32_t p = 0;
    std::uint32_t e = 0;
    std::uint32_t q = 0;
    Poly modulus;  // length e+1, monic

    // lookup tables for small fields
    bool has_tables = false;
    std::vector<std::uint32_t> add_table;  // q*q
    std::vector<std::uint32_t> mul_table;  // q*q
    std::vector<std::uint32_t> neg_table;  // q
    std::vector<std::uint32_t> inv_table;  // q (entry 0 unused)

    static constexpr std::uint32_t kTableLimit = 512;

    void decode(std::uint32_t idx, std::uint32_t* digits) const {
        for (std::uint32_t i = 0; i < e; ++i) {
            digits[i] = idx % p;
            idx /= p;
        }
    }
    std::uint32_t encode(const std::uint32_t* digits) const {
        std::uint32_t idx = 0;
        for (std::uint32_t i = e; i-- > 0;) idx = idx * p + digits[i];
        return idx;
    }

    std::uint32_t add_raw(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t da[32], db[32];
        decode(a, da);
        decode(b, db);
        for (std::uint32_t i = 0; i < e; ++i) da[i] = (da[i] + db[i]) % p;
        return encode(da);
    }
    std::uint32_t neg_raw(std::uint32_t a) const {
        std::uint32_t da[32];
        decode(a, da);
        for (std::uint32_t i = 0; i < e; ++i) da[i] = (p - da[i]) % p;
        return encode(da);
    }
    std::uint32_t mul_raw(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t da[32], db[32];
        decode(a, da);
        decode(b, db);
        std::uint64_t prod[63] = {0};
        for (std::uint32_t i = 0; i < e; ++i) {
            if (da[i] == 0) continue;
            for (std::uint32_t j = 0; j < e; ++j)
                prod[i + j] += static_cast<std::uint64_t>(da[i]) * db[j];
        }
        for (std::uint32_t i = 2 * e - 1; i-- > e;) {
            const std::uint64_t c = prod[i] % p;
            prod[i] = 0;
            if (c == 0) continue;
            for (std::uint32_t j = 0; j < e; ++j)
                prod[i - e + j] += (p - modulus[j] % p) * c;
        }
        std::uint32_t out[32];
        for (std::uint32_t i = 0; i < e; ++i)
            out[i] = static_cast<std::uint32_t>(prod[i] % p);
        return encode(out);
    }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        return has_tables ? add_table[a * q + b] : add_raw(a, b);
    }
    std::uint32_t neg(std::uint32_t a) const {
        return has_tables ? neg_table[a] : neg_raw(a);
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
        return add(a, neg(b));
    }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return has_tables ? mul_table[a * q + b] : mul_raw(a, b);
    }
    std::uint32_t pow(std::uint32_t a, long long n) const {
        if (n < 0) return pow(inv(a), -n);
        std::uint32_t acc = 1, base = a;
        auto m = static_cast<unsigned long long>(n);
        while (m > 0) {
            if (m & 1) acc = mul(acc, base);
            base = mul(base, base);
            m >>= 1;
        }
        return acc;
    }
    std::uint32_t inv(std::uint32_t a) const {
        if (a == 0) throw DivisionByZero();
        if (has_tables) return inv_table[a];
        return pow(a, static_cast<long long>(q) - 2);
    }
    std::uint32_t div(std::uint32_t a, std::uint32_t b) const {
        return mul(a, inv(b));
    }

    void build_tables() {
        if (q > kTableLimit) return;
        add_table.resize(static_cast<std::size_t>(q) * q);
        mul_table.resize(static_cast<std::size_t>(q) * q);
        neg_table.resize(q);
        inv_table.assign(q, 0);
        for (std::uint32_t a = 0; a < q; ++a) {
            neg_table[a] = neg_raw(a);
            for (std::uint32_t b = 0; b < q; ++b) {
                add_table[a * q + b] = add_raw(a, b);
                const std::uint32_t m = mul_raw(a, b);
                mul_table[a * q + b] = m;
                if (m == 1) inv_table[a] = b;
            }
        }
        has_tables = true;
    }
};

}  // namespace detail

class FieldSpec;

/// An element of GF(p^e), identified by its base-p digit encoding of the
/// coefficient vector (index 0 is the zero element, index 1 the unit).
class FieldElement {
  public:
    FieldElement() = default;

    std::uint32_t index() const { return idx_; }
    bool is_zero() const { return idx_ == 0; }
    bool is_one() const { return idx_ == 1; }

    FieldElement operator+(const FieldElement& o) const {
        check(o);
        return {core_->add(idx_, o.idx_), core_};
    }
    FieldElement operator-(const FieldElement& o) const {
        check(o);
        return {core_->sub(idx_, o.idx_), core_};
    }
    FieldElement operator*(const FieldElement& o) const {
        check(o);
        return {core_->mul(idx_, o.idx_), core_};
    }
    FieldElement operator/(const FieldElement& o) const {
        check(o);
        return {core_->div(idx_, o.idx_), core_};
    }
    FieldElement operator-() const { return {core_->neg(idx_), core_}; }
    FieldElement inverse() const { return {core_->inv(idx_), core_}; }
    FieldElement pow(long long n) const { return {core_->pow(idx_, n), core_}; }

    bool operator==(const FieldElement& o) const {
        return idx_ == o.idx_ && same_field(o);
    }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
    bool operator<(const FieldElement& o) const { return idx_ < o.idx_; }

  private:
    friend class FieldSpec;
    FieldElement(std::uint32_t idx, const detail::FieldCore* core)
        : idx_(idx), core_(core) {}

    bool same_field(const FieldElement& o) const {
        if (core_ == o.core_) return true;
        if (core_ == nullptr || o.core_ == nullptr) return false;
        return core_->p == o.core_->p && core_->e == o.core_->e &&
               core_->modulus == o.core_->modulus;
    }
    void check(const FieldElement& o) const {
        if (core_ == nullptr || !same_field(o)) throw FieldMismatch();
    }

    std::uint32_t idx_ = 0;
    const detail::FieldCore* core_ = nullptr;
};

/// GF(p^e) with a deterministic modulus: the lexicographically least monic
/// irreducible, coefficients read as a base-p number (constant digit least
/// significant). Immutable and freely shareable; copies share one core.
class FieldSpec {
  public:
    FieldSpec(std::uint32_t p, std::uint32_t e) {
        if (!detail::is_prime(p)) throw NonPrimeCharacteristic(p);
        if (e < 1) throw InvalidParams("extension degree must be >= 1");
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < e; ++i) {
            q *= p;
            if (q > (1ull << 20))
                throw InvalidParams("field order exceeds the 2^20 cap");
        }
        auto core = std::make_shared<detail::FieldCore>();
        core->p = p;
        core->e = e;
        core->q = static_cast<std::uint32_t>(q);
        core->modulus = find_modulus(p, e, core->q);
        core->build_tables();
        core_ = std::move(core);
    }

    std::uint32_t p() const { return core_->p; }
    std::uint32_t e() const { return core_->e; }
    std::uint32_t q() const { return core_->q; }
    const std::vector<std::uint32_t>& modulus() const { return core_->modulus; }

    FieldElement zero() const { return {0, core_.get()}; }
    FieldElement one() const { return {1, core_.get()}; }

    FieldElement element(std::uint32_t idx) const {
        if (idx >= q()) throw InvalidParams("element index out of range");
        return {idx, core_.get()};
    }

    /// Constant polynomial v mod p (accepts negative v).
    FieldElement from_int(long long v) const {
        const long long p = core_->p;
        long long r = v % p;
        if (r < 0) r += p;
        return {static_cast<std::uint32_t>(r), core_.get()};
    }

    /// All q elements; zero first, one second, then ascending index.
    std::vector<FieldElement> elements() const {
        std::vector<FieldElement> out;
        out.reserve(q());
        for (std::uint32_t i = 0; i < q(); ++i)
            out.emplace_back(FieldElement{i, core_.get()});
        return out;
    }

    // index-level arithmetic, used by the geometry layer for speed
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        return core_->add(a, b);
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
        return core_->sub(a, b);
    }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return core_->mul(a, b);
    }
    std::uint32_t div(std::uint32_t a, std::uint32_t b) const {
        return core_->div(a, b);
    }
    std::uint32_t neg(std::uint32_t a) const { return core_->neg(a); }
    std::uint32_t inv(std::uint32_t a) const { return core_->inv(a); }

    bool operator==(const FieldSpec& o) const {
        return core_ == o.core_ ||
               (p() == o.p() && e() == o.e() && modulus() == o.modulus());
    }
    bool operator!=(const FieldSpec& o) const { return !(*this == o); }

  private:
    static detail::Poly find_modulus(std::uint32_t p, std::uint32_t e,
                                     std::uint32_t q) {
        if (e == 1) return {0, 1};  // the polynomial x
        for (std::uint32_t v = 0; v < q; ++v) {
            detail::Poly f(e + 1, 0);
            std::uint32_t t = v;
            for (std::uint32_t i = 0; i < e; ++i) {
                f[i] = t % p;
                t /= p;
            }
            f[e] = 1;
            if (detail::poly_irreducible(f, p)) return f;
        }
        throw NoIrreducibleFound("no monic irreducible of degree " +
                                 std::to_string(e) + " over GF(" +
                                 std::to_string(p) + ")");
    }

    std::shared_ptr<const detail::FieldCore> core_;
};

inline FieldSpec make_field(std::uint32_t p, std::uint32_t e) {
    return FieldSpec(p, e);
}

inline std::string to_string(const FieldElement& a) {
    return std::to_string(a.index());
}

}  // namespace girth7
