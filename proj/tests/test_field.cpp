#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <vector>

#include "girth7/field.hpp"

using girth7::FieldElement;
using girth7::FieldSpec;
using girth7::make_field;

namespace {

// ---- independent oracle: brute-force irreducibility & modulus search ----
//
// A monic polynomial of degree e is irreducible over GF(p) iff no monic
// polynomial of degree 1..e/2 divides it.  Plain long division, nothing
// shared with the library implementation.

using P = std::vector<std::uint32_t>;  // coefficients, ascending degree

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    std::uint32_t r = 1;
    for (std::uint32_t n = p - 2; n > 0; n >>= 1) {
        if (n & 1) r = static_cast<std::uint64_t>(r) * a % p;
        a = static_cast<std::uint64_t>(a) * a % p;
    }
    return r;
}

bool divides(const P& g, P f, std::uint32_t p) {
    const std::size_t dg = g.size() - 1;
    const std::uint32_t li = inv_mod(g.back(), p);
    while (f.size() >= g.size()) {
        const std::uint64_t c = static_cast<std::uint64_t>(f.back()) * li % p;
        const std::size_t shift = f.size() - g.size();
        for (std::size_t j = 0; j <= dg; ++j)
            f[shift + j] = static_cast<std::uint32_t>(
                (f[shift + j] + p - c * g[j] % p) % p);
        while (!f.empty() && f.back() == 0) f.pop_back();
    }
    return f.empty();
}

P poly_of(std::uint32_t v, std::uint32_t deg, std::uint32_t p) {
    P f(deg + 1, 0);
    for (std::uint32_t i = 0; i < deg; ++i) {
        f[i] = v % p;
        v /= p;
    }
    f[deg] = 1;
    return f;
}

bool oracle_irreducible(const P& f, std::uint32_t p) {
    const std::uint32_t e = static_cast<std::uint32_t>(f.size()) - 1;
    for (std::uint32_t d = 1; 2 * d <= e; ++d) {
        std::uint32_t count = 1;
        for (std::uint32_t i = 0; i < d; ++i) count *= p;
        for (std::uint32_t v = 0; v < count; ++v)
            if (divides(poly_of(v, d, p), f, p)) return false;
    }
    return true;
}

P oracle_modulus(std::uint32_t p, std::uint32_t e) {
    std::uint32_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) q *= p;
    for (std::uint32_t v = 0; v < q; ++v) {
        P f = poly_of(v, e, p);
        if (oracle_irreducible(f, p)) return f;
    }
    return {};
}

}  // namespace

TEST_CASE("modulus is the lexicographically least monic irreducible") {
    const std::pair<std::uint32_t, std::uint32_t> cases[] = {
        {2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {2, 7}, {2, 8},
        {3, 2}, {3, 3}, {3, 4}, {3, 5}, {5, 2}, {5, 3}, {7, 2},
        {11, 2}, {13, 2}};
    for (auto [p, e] : cases) {
        CAPTURE(p, e);
        FieldSpec f = make_field(p, e);
        CHECK(f.modulus() == oracle_modulus(p, e));
    }
}

TEST_CASE("frozen moduli for the workhorse fields") {
    CHECK(make_field(2, 1).modulus() == std::vector<std::uint32_t>{0, 1});
    CHECK(make_field(7, 1).modulus() == std::vector<std::uint32_t>{0, 1});
    CHECK(make_field(2, 2).modulus() == std::vector<std::uint32_t>{1, 1, 1});
    CHECK(make_field(2, 3).modulus() ==
          std::vector<std::uint32_t>{1, 1, 0, 1});  // x^3 + x + 1
    CHECK(make_field(3, 2).modulus() ==
          std::vector<std::uint32_t>{1, 0, 1});  // x^2 + 1
    CHECK(make_field(2, 4).modulus() ==
          std::vector<std::uint32_t>{1, 1, 0, 0, 1});  // x^4 + x + 1
    CHECK(make_field(2, 5).modulus() ==
          std::vector<std::uint32_t>{1, 0, 1, 0, 0, 1});  // x^5 + x^2 + 1
}

TEST_CASE("element enumeration: zero first, one second, ascending index") {
    for (std::uint32_t q : {2u, 3u, 4u, 5u, 8u, 9u}) {
        const std::uint32_t p = (q == 4 || q == 8) ? 2 : (q == 9 ? 3 : q);
        const std::uint32_t e = (q == 4) ? 2 : (q == 8) ? 3 : (q == 9) ? 2 : 1;
        FieldSpec f = make_field(p, e);
        auto els = f.elements();
        REQUIRE(els.size() == q);
        CHECK(els[0] == f.zero());
        CHECK(els[1] == f.one());
        for (std::uint32_t i = 0; i < q; ++i) CHECK(els[i].index() == i);
    }
}

TEST_CASE("spot arithmetic in prime fields") {
    FieldSpec f5 = make_field(5, 1);
    CHECK((f5.element(3) * f5.element(4)).index() == 2);
    CHECK((f5.element(3) + f5.element(4)).index() == 2);
    CHECK((f5.element(1) - f5.element(3)).index() == 3);
    CHECK((-f5.element(2)).index() == 3);
    CHECK(f5.element(2).inverse().index() == 3);
    CHECK((f5.element(4) / f5.element(2)).index() == 2);
}

TEST_CASE("spot arithmetic in extension fields") {
    // GF(8) with modulus x^3 + x + 1: index 2 is x, 4 is x^2, 3 is x + 1
    FieldSpec f8 = make_field(2, 3);
    CHECK((f8.element(2) * f8.element(2)).index() == 4);
    CHECK((f8.element(2) * f8.element(4)).index() == 3);  // x^3 = x + 1
    // GF(9) with modulus x^2 + 1: index 3 is x, so x*x = -1 = 2
    FieldSpec f9 = make_field(3, 2);
    CHECK((f9.element(3) * f9.element(3)).index() == 2);
    CHECK((f9.element(3) + f9.element(1)).index() == 4);  // x + 1
}

TEST_CASE("field axioms hold exhaustively in small fields") {
    const std::pair<std::uint32_t, std::uint32_t> cases[] = {
        {2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}, {2, 4},
        {13, 1}, {5, 2}, {3, 3}};
    for (auto [p, e] : cases) {
        CAPTURE(p, e);
        FieldSpec f = make_field(p, e);
        auto els = f.elements();
        const std::size_t q = els.size();
        for (std::size_t i = 0; i < q; ++i) {
            const FieldElement a = els[i];
            CHECK(a + f.zero() == a);
            CHECK(a * f.one() == a);
            CHECK(a + (-a) == f.zero());
            CHECK(a * f.zero() == f.zero());
            if (!a.is_zero()) {
                CHECK(a * a.inverse() == f.one());
                CHECK(a.pow(static_cast<long long>(q) - 1) == f.one());
                CHECK(a.pow(-1) == a.inverse());
            }
            for (std::size_t j = 0; j < q; ++j) {
                const FieldElement b = els[j];
                CHECK(a + b == b + a);
                CHECK(a * b == b * a);
                CHECK((a - b) + b == a);
                if (!b.is_zero()) CHECK((a / b) * b == a);
                for (std::size_t k = 0; k < q; ++k) {
                    const FieldElement c = els[k];
                    CHECK((a + b) + c == a + (b + c));
                    CHECK((a * b) * c == a * (b * c));
                    CHECK(a * (b + c) == a * b + a * c);
                }
            }
        }
    }
}

TEST_CASE("fields above the table threshold still behave") {
    FieldSpec f = make_field(5, 4);  // q = 625 > 512, tables disabled
    REQUIRE(f.q() == 625);
    CHECK(f.modulus() == oracle_modulus(5, 4));
    // sample with a fixed stride; checks must match the table-driven rules
    for (std::uint32_t a = 1; a < 625; a += 37) {
        auto x = f.element(a);
        CHECK(x * x.inverse() == f.one());
        CHECK(x.pow(624) == f.one());
        CHECK(x + (-x) == f.zero());
        for (std::uint32_t b = 0; b < 625; b += 101) {
            auto y = f.element(b);
            CHECK(x * y == y * x);
            CHECK((x + y) - y == x);
            CHECK(x * (y + f.one()) == x * y + x);
        }
    }
}

TEST_CASE("pow handles corner exponents") {
    FieldSpec f = make_field(7, 1);
    CHECK(f.zero().pow(0) == f.one());
    CHECK(f.element(3).pow(0) == f.one());
    CHECK(f.element(3).pow(1) == f.element(3));
    CHECK(f.element(2).pow(-2) == (f.element(2) * f.element(2)).inverse());
}

TEST_CASE("from_int wraps modulo the characteristic") {
    FieldSpec f = make_field(5, 1);
    CHECK(f.from_int(7) == f.element(2));
    CHECK(f.from_int(-1) == f.element(4));
    CHECK(f.from_int(-10) == f.zero());
    FieldSpec f9 = make_field(3, 2);
    CHECK(f9.from_int(4) == f9.one());
    CHECK(f9.from_int(-1) == f9.element(2));
}

TEST_CASE("structurally equal fields interoperate") {
    FieldSpec a = make_field(3, 2);
    FieldSpec b = make_field(3, 2);
    CHECK(a == b);
    CHECK(a.element(5) == b.element(5));
    CHECK((a.element(5) + b.element(1)).index() ==
          (a.element(5) + a.element(1)).index());
}

TEST_CASE("error paths") {
    CHECK_THROWS_AS(make_field(6, 1), girth7::NonPrimeCharacteristic);
    CHECK_THROWS_AS(make_field(4, 2), girth7::NonPrimeCharacteristic);
    CHECK_THROWS_AS(make_field(1, 1), girth7::NonPrimeCharacteristic);
    CHECK_THROWS_AS(make_field(2, 0), girth7::InvalidParams);
    CHECK_THROWS_AS(make_field(2, 21), girth7::InvalidParams);

    FieldSpec f5 = make_field(5, 1);
    FieldSpec f7 = make_field(7, 1);
    CHECK_THROWS_AS(f5.element(1) / f5.zero(), girth7::DivisionByZero);
    CHECK_THROWS_AS(f5.zero().inverse(), girth7::DivisionByZero);
    CHECK_THROWS_AS(f5.element(1) + f7.element(1), girth7::FieldMismatch);
    CHECK_THROWS_AS(f5.element(5), girth7::InvalidParams);

    // every library error derives from the common base
    CHECK_THROWS_AS(make_field(6, 1), girth7::Error);
    CHECK_THROWS_AS(f5.zero().inverse(), girth7::Error);
}
