#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "revpell/pell.hpp"

#include "../src/pell_detail.hpp"

using namespace revpell;

namespace {

std::set<std::pair<Int, Int>> as_set(const std::vector<PellSolution>& v) {
    std::set<std::pair<Int, Int>> s;
    for (const auto& t : v) s.insert({t.x, t.y});
    return s;
}

bool satisfies(const PellProblem& p, const PellSolution& s) {
    return s.x * s.x - p.D * s.y * s.y == p.N;
}

} // namespace

TEST_CASE("cf_sqrt: golden expansions") {
    auto cf = cf_sqrt(2);
    CHECK(cf.a0 == 1);
    CHECK(cf.period == std::vector<Int>{2});

    cf = cf_sqrt(3);
    CHECK(cf.a0 == 1);
    CHECK(cf.period == std::vector<Int>{1, 2});

    cf = cf_sqrt(5);
    CHECK(cf.a0 == 2);
    CHECK(cf.period == std::vector<Int>{4});

    cf = cf_sqrt(7);
    CHECK(cf.a0 == 2);
    CHECK(cf.period == std::vector<Int>{1, 1, 1, 4});

    cf = cf_sqrt(13);
    CHECK(cf.a0 == 3);
    CHECK(cf.period == std::vector<Int>{1, 1, 1, 1, 6});

    cf = cf_sqrt(61);
    CHECK(cf.period.size() == 11); // odd period: negative Pell solvable

    CHECK_THROWS_AS(cf_sqrt(0), NonPositiveError);
    CHECK_THROWS_AS(cf_sqrt(-5), NonPositiveError);
    CHECK_THROWS_AS(cf_sqrt(49), PerfectSquareError);
}

TEST_CASE("cf_sqrt: period structure and convergent quality") {
    for (long D = 2; D <= 200; ++D) {
        Int d(D);
        if (is_perfect_square(d)) continue;
        auto cf = cf_sqrt(d);
        // palindromic-with-cap structure: the period ends at 2*a0
        CHECK(cf.period.back() == 2 * cf.a0);
        for (size_t i = 0; i + 1 < cf.period.size(); ++i)
            CHECK(cf.period[i] <= cf.a0); // interior terms never exceed a0

        // every convergent p/q over two periods has |p^2 - D q^2| < 2*sqrt(D)+1,
        // in integer form (|v| - 1)^2 < 4*D
        Int h = cf.a0, hp = 1, k = 1, kp = 0;
        for (size_t i = 0; i < 2 * cf.period.size(); ++i) {
            Int v = h * h - d * k * k;
            Int av = v < 0 ? Int(-v) : v;
            CHECK((av - 1) * (av - 1) < 4 * d);
            Int a = cf.period[i % cf.period.size()];
            Int h2 = a * h + hp, k2 = a * k + kp;
            hp = h;
            kp = k;
            h = h2;
            k = k2;
        }
    }
}

TEST_CASE("fundamental_solution: goldens and minimality") {
    CHECK(fundamental_solution(2) == std::pair<Int, Int>{3, 2});
    CHECK(fundamental_solution(3) == std::pair<Int, Int>{2, 1});
    CHECK(fundamental_solution(5) == std::pair<Int, Int>{9, 4});
    CHECK(fundamental_solution(12) == std::pair<Int, Int>{7, 2});
    CHECK(fundamental_solution(61) ==
          std::pair<Int, Int>{Int("1766319049"), Int("226153980")});
    CHECK_THROWS_AS(fundamental_solution(16), PerfectSquareError);

    for (long D = 2; D <= 60; ++D) {
        Int d(D);
        if (is_perfect_square(d)) continue;
        auto [x1, y1] = fundamental_solution(d);
        CHECK(x1 * x1 - d * y1 * y1 == 1);
        CHECK(x1 > 0);
        CHECK(y1 > 0);
        // minimality by direct scan
        for (Int y = 1; y < y1; ++y) CHECK(!is_perfect_square(1 + d * y * y));
    }
}

TEST_CASE("negative_pell_solution: goldens and characterization") {
    CHECK(negative_pell_solution(2) == std::pair<Int, Int>{1, 1});
    CHECK(negative_pell_solution(5) == std::pair<Int, Int>{2, 1});
    CHECK(negative_pell_solution(13) == std::pair<Int, Int>{18, 5});
    CHECK(!negative_pell_solution(3).has_value());
    CHECK(!negative_pell_solution(7).has_value());
    CHECK(!negative_pell_solution(12).has_value());

    for (long D = 2; D <= 80; ++D) {
        Int d(D);
        if (is_perfect_square(d)) continue;
        auto neg = negative_pell_solution(d);
        CHECK(neg.has_value() == (cf_sqrt(d).period.size() % 2 == 1));
        if (neg) {
            auto [x, y] = *neg;
            CHECK(x * x - d * y * y == -1);
            CHECK(x > 0);
            CHECK(y > 0);
        }
    }
}

TEST_CASE("solve_general: hyperbolic class representatives (goldens)") {
    auto s = solve_general({12, 4});
    CHECK(s.kind == PellKind::InfiniteClasses);
    CHECK(s.automorph == std::pair<Int, Int>{7, 2});
    CHECK(as_set(s.solutions) == std::set<std::pair<Int, Int>>{{2, 0}, {4, 1}});

    s = solve_general({5, 4});
    CHECK(s.kind == PellKind::InfiniteClasses);
    CHECK(s.automorph == std::pair<Int, Int>{9, 4});
    CHECK(as_set(s.solutions) == std::set<std::pair<Int, Int>>{{2, 0}, {-3, 1}, {3, 1}});

    s = solve_general({396, 324});
    CHECK(s.kind == PellKind::InfiniteClasses);
    CHECK(s.automorph == std::pair<Int, Int>{199, 10});
    CHECK(as_set(s.solutions) == std::set<std::pair<Int, Int>>{{18, 0}, {180, 9}});

    s = solve_general({5, 100});
    CHECK(as_set(s.solutions) ==
          std::set<std::pair<Int, Int>>{{10, 0}, {-15, 5}, {15, 5}});

    s = solve_general({5, -4});
    CHECK(s.kind == PellKind::InfiniteClasses);
    CHECK(as_set(s.solutions) == std::set<std::pair<Int, Int>>{{-1, 1}, {1, 1}, {4, 2}});

    // no solutions: x^2 - 7 y^2 = -1 has even period
    s = solve_general({7, -1});
    CHECK(s.kind == PellKind::Empty);
    CHECK(s.solutions.empty());
    CHECK(s.automorph == std::pair<Int, Int>{8, 3}); // automorph still attached

    // N = 0, D non-square: only the origin
    s = solve_general({5, 0});
    CHECK(s.kind == PellKind::FiniteList);
    CHECK(as_set(s.solutions) == std::set<std::pair<Int, Int>>{{0, 0}});
}

TEST_CASE("solve_general: ellipse, degenerate, and square-D branches") {
    auto s = solve_general({-3, 36});
    CHECK(s.kind == PellKind::FiniteList);
    CHECK(s.solutions.size() == 6);
    CHECK(as_set(s.solutions) == std::set<std::pair<Int, Int>>{
                                     {-6, 0}, {6, 0}, {-3, 3}, {3, 3}, {-3, -3}, {3, -3}});
    CHECK(std::is_sorted(s.solutions.begin(), s.solutions.end()));

    s = solve_general({-1, -1});
    CHECK(s.kind == PellKind::Empty);
    s = solve_general({-3, 5});
    CHECK(s.kind == PellKind::Empty);
    s = solve_general({-2, 0});
    CHECK(s.kind == PellKind::FiniteList);
    CHECK(as_set(s.solutions) == std::set<std::pair<Int, Int>>{{0, 0}});

    // D = 0
    s = solve_general({0, 64});
    CHECK(s.kind == PellKind::DegenerateLines);
    REQUIRE(s.lines.size() == 2);
    CHECK(((s.lines[0].x0 == -8 && s.lines[1].x0 == 8) ||
           (s.lines[0].x0 == 8 && s.lines[1].x0 == -8)));
    CHECK(s.lines[0].slope == 0);
    CHECK(s.lines[1].slope == 0);
    s = solve_general({0, 8});
    CHECK(s.kind == PellKind::Empty);
    s = solve_general({0, -9});
    CHECK(s.kind == PellKind::Empty);
    s = solve_general({0, 0});
    CHECK(s.kind == PellKind::DegenerateLines);
    REQUIRE(s.lines.size() == 1);
    CHECK(s.lines[0].x0 == 0);
    CHECK(s.lines[0].slope == 0);

    // D a positive square, N = 0: the two lines x = +-s*y
    s = solve_general({9, 0});
    CHECK(s.kind == PellKind::DegenerateLines);
    REQUIRE(s.lines.size() == 2);
    CHECK(std::set<Int>{s.lines[0].slope, s.lines[1].slope} == std::set<Int>{-3, 3});

    // D a positive square, N != 0: finite divisor-pair list
    s = solve_general({16, 9});
    CHECK(s.kind == PellKind::FiniteList);
    CHECK(as_set(s.solutions) == std::set<std::pair<Int, Int>>{
                                     {-5, -1}, {5, -1}, {-3, 0}, {3, 0}, {-5, 1}, {5, 1}});
    s = solve_general({4, 3});
    CHECK(s.kind == PellKind::Empty); // (x-2y)(x+2y) = 3 needs odd-parity split
}

TEST_CASE("solve_general + expand_solutions == brute force on a small grid") {
    const Int ymax = 25;
    for (long D = -7; D <= 20; ++D)
        for (long N = -24; N <= 24; ++N) {
            PellProblem p{Int(D), Int(N)};
            auto set = solve_general(p);
            for (const auto& s : set.solutions) CHECK(satisfies(p, s));
            auto expanded = expand_solutions(set, ymax);
            auto brute = brute_force_solutions(p, ymax);
            CHECK(expanded == brute);
        }
}

TEST_CASE("PQa class search (large fundamental units) matches the oracle") {
    // These D have fundamental units big enough to push the classical y-bound
    // past the scan threshold, so the continued-fraction class search runs.
    for (auto [D, N] : std::vector<std::pair<long, long>>{
             {151, 75}, {211, 1000}, {421, 4}, {394, 9}, {301, -75}}) {
        PellProblem p{Int(D), Int(N)};
        auto set = solve_general(p);
        for (const auto& r : set.solutions) {
            CHECK(satisfies(p, r));
            for (size_t j = 0; j < set.solutions.size(); ++j)
                if (&set.solutions[j] != &r)
                    CHECK(!same_class(p, r, set.solutions[j]));
        }
        CHECK(expand_solutions(set, 1000) == brute_force_solutions(p, 1000));
    }
    // same equation through both paths: scale N so the scan kicks in
    auto lmm = solve_general({421, 4});
    auto scan_small = solve_general({5, 4});
    CHECK(scan_small.kind == PellKind::InfiniteClasses);
    CHECK((lmm.kind == PellKind::InfiniteClasses || lmm.kind == PellKind::Empty));
}

TEST_CASE("class representatives are canonical and inequivalent") {
    for (auto [D, N] : std::vector<std::pair<long, long>>{
             {12, 4}, {5, 4}, {5, -4}, {396, 324}, {13, 27}, {8, 28}, {61, 9}}) {
        PellProblem p{Int(D), Int(N)};
        auto set = solve_general(p);
        REQUIRE(set.automorph.has_value());
        for (const auto& r : set.solutions) CHECK(satisfies(p, r));
        // pairwise inequivalent
        for (size_t i = 0; i < set.solutions.size(); ++i)
            for (size_t j = i + 1; j < set.solutions.size(); ++j)
                CHECK(!same_class(p, set.solutions[i], set.solutions[j]));
        // closed under the automorph and negation: orbit members land back in
        // the same class
        for (const auto& r : set.solutions) {
            auto fwd = automorph_apply(p.D, *set.automorph, {r.x, r.y}, 3);
            CHECK(same_class(p, r, {fwd.first, fwd.second}));
            CHECK(same_class(p, r, {-r.x, -r.y}));
        }
    }
}

TEST_CASE("automorph_apply: group action basics") {
    Int D = 5;
    std::pair<Int, Int> u{9, 4};
    std::pair<Int, Int> s{3, 1};
    auto t = automorph_apply(D, u, s, 1);
    CHECK(t.first * t.first - D * t.second * t.second == 4);
    CHECK(automorph_apply(D, u, t, -1) == s);
    CHECK(automorph_apply(D, u, s, 0) == s);
    auto via_three = automorph_apply(D, u, s, 3);
    auto stepwise = automorph_apply(D, u, automorph_apply(D, u, automorph_apply(D, u, s, 1), 1), 1);
    CHECK(via_three == stepwise);
}

TEST_CASE("expand_solutions: sorted, deduplicated, exact") {
    auto set = solve_general({5, 4});
    auto v = expand_solutions(set, 200);
    CHECK(std::is_sorted(v.begin(), v.end()));
    CHECK(std::adjacent_find(v.begin(), v.end()) == v.end());
    for (const auto& s : v) CHECK(satisfies(set.problem, s));
    CHECK(v == brute_force_solutions({5, 4}, 200));

    // depth-limit independence: a larger bound only adds solutions
    auto small = expand_solutions(set, 50);
    for (const auto& s : small)
        CHECK(std::find(v.begin(), v.end(), s) != v.end());
}

TEST_CASE("classify_conic") {
    CHECK(classify_conic(Mat2Z{2, 1, 1, 1}, Orientation::Preserving) ==
          ConicKind::Hyperbola);
    CHECK(classify_conic(Mat2Z{1, 1, -1, 0}, Orientation::Preserving) ==
          ConicKind::Ellipse); // trace 1
    CHECK(classify_conic(Mat2Z{1, 1, 0, 1}, Orientation::Preserving) ==
          ConicKind::DegenerateParallelLines); // trace 2
    CHECK(classify_conic(Mat2Z{2, 3, 1, 1}, Orientation::Reversing) ==
          ConicKind::Ellipse);
    CHECK(classify_conic(Mat2Z{3, 4, 1, 1}, Orientation::Reversing) ==
          ConicKind::DegenerateParallelLines);
    CHECK(classify_conic(Mat2Z{4, 5, 1, 1}, Orientation::Reversing) ==
          ConicKind::Hyperbola);
    CHECK_THROWS_AS(classify_conic(Mat2Z{2, 1, 1, 1}, Orientation::Reversing),
                    OrientationMismatchError);
    CHECK_THROWS_AS(classify_conic(Mat2Z{2, 3, 1, 1}, Orientation::Preserving),
                    OrientationMismatchError);
}

TEST_CASE("factorize: goldens and reconstruction sweep") {
    using Factors = std::vector<std::pair<Int, unsigned>>;
    CHECK(detail::factorize(1).empty());
    CHECK(detail::factorize(2) == Factors{{2, 1}});
    CHECK(detail::factorize(97) == Factors{{97, 1}});
    CHECK(detail::factorize(360) == Factors{{2, 3}, {3, 2}, {5, 1}});
    CHECK(detail::factorize(Int(1) << 20) == Factors{{2, 20}});
    // the perfect-square fast path: (2b)^2 factors through 2b
    CHECK(detail::factorize(Int("1000000000000")) == Factors{{2, 12}, {5, 12}});
    CHECK(detail::factorize(Int("490000000000000000")) ==
          Factors{{2, 16}, {5, 16}, {7, 2}});

    auto is_prime = [](const Int& p) {
        if (p < 2) return false;
        for (Int d = 2; d * d <= p; ++d)
            if (p % d == 0) return false;
        return true;
    };
    for (long n = 1; n <= 600; ++n) {
        auto fac = detail::factorize(n);
        Int prod = 1;
        Int prev = 1;
        for (const auto& [p, e] : fac) {
            CHECK(is_prime(p));
            CHECK(p > prev);
            prev = p;
            CHECK(e >= 1);
            for (unsigned i = 0; i < e; ++i) prod *= p;
        }
        CHECK(prod == n);
    }
}

TEST_CASE("sqrt_mod: matches the window-scan oracle") {
    auto oracle = [](const Int& a, const Int& m) {
        std::vector<Int> zs;
        Int half = m / 2;
        for (Int z = half - m + 1; z <= half; ++z)
            if ((z * z - a) % m == 0) zs.push_back(z);
        return zs;
    };

    for (long m = 1; m <= 120; ++m)
        for (long a = 0; a < m; ++a)
            CHECK(detail::sqrt_mod(a, m) == oracle(a, m));

    // prime powers and rough composites at spot levels, including non-unit
    // and negative residues
    for (long m : {121, 125, 128, 243, 256, 343, 360, 420, 512, 625, 729, 900,
                   960, 1024}) {
        for (long a : {0L, 1L, 2L, 4L, 5L, 8L, 9L, 16L, 17L, 21L, 24L, 25L,
                       45L, 48L, 49L, 50L, 61L, 64L, 100L, -3L, -4L, m / 2,
                       m - 4, m - 1})
            CHECK(detail::sqrt_mod(a, m) == oracle(a, m));
    }
}

TEST_CASE("sqrt_mod: large square moduli") {
    // m = (2b)^2 as produced by the case-3 reduction at conjugated scale
    Int b("999983"); // prime
    Int m = 4 * b * b;
    for (const Int& D : {Int("152415789666209419"), Int(21), Int(-4)}) {
        auto zs = detail::sqrt_mod(D, m);
        CHECK(std::is_sorted(zs.begin(), zs.end()));
        CHECK(std::adjacent_find(zs.begin(), zs.end()) == zs.end());
        Int half = m / 2;
        for (const Int& z : zs) {
            CHECK((z * z - D) % m == 0);
            CHECK(z > half - m);
            CHECK(z <= half);
            // negation-closed up to the window wrap
            Int neg = -z;
            if (neg > half) neg -= m;
            if (neg <= half - m) neg += m;
            CHECK(std::binary_search(zs.begin(), zs.end(), neg));
        }
    }
}

TEST_CASE("solve_general: conjugated-scale problems match brute force") {
    // (D, N) of the shape the case-3 reduction emits after conjugating a
    // small matrix to entries ~1e6..1e9: the class search must stay exact
    // and fast.  (2b, 0) is always a solution, so the set is never empty.
    struct Shape {
        Int t, b;
    };
    for (const auto& sh : {Shape{Int(12347), Int(999983)},
                           Shape{Int("123456787"), Int(720720)},
                           Shape{Int(37), Int(360)}}) {
        PellProblem p{sh.t * sh.t - 4, 4 * sh.b * sh.b};
        auto set = solve_general(p);
        REQUIRE(set.kind == PellKind::InfiniteClasses);
        REQUIRE(set.automorph.has_value());
        CHECK(set.automorph->first * set.automorph->first -
                  p.D * set.automorph->second * set.automorph->second ==
              1);
        for (const auto& s : set.solutions) CHECK(satisfies(p, s));
        bool has_axis = false;
        for (const auto& s : set.solutions)
            if (same_class(p, s, {2 * sh.b, 0})) has_axis = true;
        CHECK(has_axis);
        CHECK(expand_solutions(set, 60) == brute_force_solutions(p, 60));
    }
}
