#include "revpell/pell.hpp"

#include "pell_detail.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace revpell {

namespace {

// floor((P + sqrt(D)) / Q) for irrational sqrt(D), s = isqrt(D).
// Q > 0: floor((P+s)/Q); Q < 0: floor((P+s+1)/Q).  Exact because no integer
// lies in (s, sqrt(D)) or (sqrt(D), s+1).
Int cf_floor(const Int& P, const Int& Q, const Int& s) {
    Int num = P + s;
    if (Q < 0) num += 1;
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), Q.get_mpz_t());
    return q;
}

Int abs_int(const Int& v) { return v < 0 ? Int(-v) : v; }

} // namespace

namespace detail {

namespace {

Int mod_pos(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int pow_int(const Int& p, unsigned k) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), k);
    return r;
}

Int pow_mod(const Int& b, const Int& e, const Int& m) {
    Int r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Tonelli-Shanks: some r with r^2 = a (mod p); odd prime p, legendre(a, p) = 1.
Int sqrt_mod_odd_prime(const Int& a, const Int& p) {
    if (mod_pos(p, 4) == 3) return pow_mod(a, (p + 1) / 4, p);
    Int q = p - 1;
    unsigned long s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q /= 2;
        ++s;
    }
    Int z = 2;
    while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
    Int c = pow_mod(z, q, p);
    Int r = pow_mod(a, (q + 1) / 2, p);
    Int t = pow_mod(a, q, p);
    unsigned long order = s;
    while (t != 1) {
        Int tt = t;
        unsigned long i = 0;
        while (tt != 1) {
            tt = tt * tt % p;
            ++i;
        }
        Int b = c;
        for (unsigned long j = i + 1; j < order; ++j) b = b * b % p;
        r = r * b % p;
        c = b * b % p;
        t = t * c % p;
        order = i;
    }
    return r;
}

// Roots of w^2 = u (mod p^j) for odd p and unit u: none or a +- pair.
std::vector<Int> sqrt_unit_mod_odd_pp(const Int& u, const Int& p, unsigned j) {
    Int a0 = mod_pos(u, p);
    if (mpz_legendre(a0.get_mpz_t(), p.get_mpz_t()) != 1) return {};
    Int r = sqrt_mod_odd_prime(a0, p);
    Int pk = p;
    for (unsigned i = 1; i < j; ++i) {
        Int next = pk * p;
        // The derivative 2r is a unit, so the root lifts uniquely (Hensel).
        Int two_r = mod_pos(2 * r, next);
        Int inv;
        mpz_invert(inv.get_mpz_t(), two_r.get_mpz_t(), next.get_mpz_t());
        r = mod_pos(r - (r * r - u) * inv, next);
        pk = next;
    }
    Int other = pk - r;
    if (r == other) return {r};
    return {std::min(r, other), std::max(r, other)};
}

// Roots of w^2 = u (mod 2^j) for odd u: {1}, {1, 3}, or a negation-closed
// 4-element set.
std::vector<Int> sqrt_unit_mod_2pow(const Int& u, unsigned j) {
    if (j == 1) return {Int(1)};
    if (j == 2)
        return mod_pos(u, 4) == 1 ? std::vector<Int>{1, 3} : std::vector<Int>{};
    if (mod_pos(u, 8) != 1) return {};
    // r = 1 holds mod 8; adding 2^(i-1) fixes the next bit whenever it misses.
    Int r = 1;
    for (unsigned i = 3; i < j; ++i)
        if (mod_pos(r * r - u, pow_int(2, i + 1)) != 0) r += pow_int(2, i - 1);
    Int mod = pow_int(2, j);
    Int half = mod / 2;
    std::vector<Int> out = {r, mod_pos(mod - r, mod), mod_pos(r + half, mod),
                            mod_pos(half - r, mod)};
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

std::vector<std::pair<Int, unsigned>> factorize(const Int& n) {
    std::vector<std::pair<Int, unsigned>> out;
    Int rem = n;
    if (rem > 1) {
        Int r = isqrt_floor(rem);
        if (r * r == rem) {
            for (const auto& [p, e] : factorize(r)) out.emplace_back(p, 2 * e);
            return out;
        }
    }
    auto strip = [&](const Int& p) {
        if (rem % p != 0) return;
        unsigned e = 0;
        do {
            rem /= p;
            ++e;
        } while (rem % p == 0);
        out.emplace_back(p, e);
    };
    strip(2);
    strip(3);
    for (Int p = 5; p * p <= rem; p += 6) {
        strip(p);
        Int q = p + 2;
        if (q * q <= rem) strip(q);
    }
    if (rem > 1) out.emplace_back(rem, 1);
    return out;
}

std::vector<Int> sqrt_mod_prime_power(const Int& a, const Int& p, unsigned k) {
    Int pk = pow_int(p, k);
    Int a0 = mod_pos(a, pk);
    std::vector<Int> out;
    if (a0 == 0) {
        // x^2 = 0 (mod p^k) iff x carries p-valuation at least ceil(k/2).
        Int stepv = pow_int(p, (k + 1) / 2);
        Int count = pow_int(p, k / 2);
        for (Int t = 0; t < count; ++t) out.push_back(t * stepv);
        return out;
    }
    Int u;
    unsigned long v = mpz_remove(u.get_mpz_t(), a0.get_mpz_t(), p.get_mpz_t());
    if (v % 2 != 0) return {};
    unsigned j = k - static_cast<unsigned>(v);
    std::vector<Int> base =
        p == 2 ? sqrt_unit_mod_2pow(u, j) : sqrt_unit_mod_odd_pp(u, p, j);
    if (base.empty()) return {};
    // x = p^(v/2) w' with w' = w (mod p^j); the upper p^(v/2) part is free.
    Int ph = pow_int(p, static_cast<unsigned>(v) / 2);
    Int pj = pow_int(p, j);
    for (const Int& w : base)
        for (Int t = 0; t < ph; ++t) out.push_back(ph * (w + t * pj));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Int> sqrt_mod(const Int& a, const Int& m) {
    std::vector<Int> roots{0};
    Int mod_so_far = 1;
    for (const auto& [p, e] : factorize(m)) {
        Int pk = pow_int(p, e);
        std::vector<Int> local = sqrt_mod_prime_power(a, p, e);
        if (local.empty()) return {};
        Int base = mod_pos(mod_so_far, pk);
        Int inv;
        mpz_invert(inv.get_mpz_t(), base.get_mpz_t(), pk.get_mpz_t());
        std::vector<Int> next;
        next.reserve(roots.size() * local.size());
        for (const Int& r : roots)
            for (const Int& s : local)
                next.push_back(r + mod_so_far * mod_pos((s - r) * inv, pk));
        roots = std::move(next);
        mod_so_far *= pk;
    }
    Int half = m / 2;
    for (Int& r : roots)
        if (r > half) r -= m;
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

} // namespace detail

CFExpansion cf_sqrt(const Int& D) {
    if (D <= 0) throw NonPositiveError("cf_sqrt: D = " + D.get_str() + " <= 0");
    Int a0 = isqrt_floor(D);
    if (a0 * a0 == D)
        throw PerfectSquareError("cf_sqrt: D = " + D.get_str() + " is a perfect square");
    CFExpansion cf;
    cf.a0 = a0;
    // P_{k+1} = a_k Q_k - P_k,  Q_{k+1} = (D - P^2)/Q,  a = floor((a0+P)/Q).
    Int P = 0, Q = 1, a = a0;
    while (true) {
        P = a * Q - P;
        Q = (D - P * P) / Q;
        a = (a0 + P) / Q;
        cf.period.push_back(a);
        if (Q == 1) break; // period closes; last term is 2*a0
    }
    return cf;
}

std::pair<Int, Int> fundamental_solution(const Int& D) {
    CFExpansion cf = cf_sqrt(D);
    const size_t ell = cf.period.size();
    // Convergent over a_0 .. a_{ell-1} gives p^2 - D q^2 = (-1)^ell.
    Int h = cf.a0, hp = 1;
    Int k = 1, kp = 0;
    for (size_t i = 0; i + 1 < ell; ++i) {
        Int a = cf.period[i];
        Int h2 = a * h + hp, k2 = a * k + kp;
        hp = h;
        kp = k;
        h = h2;
        k = k2;
    }
    if (ell % 2 == 0) return {h, k};
    // Odd period: p^2 - D q^2 = -1; square it.
    return {h * h + D * k * k, 2 * h * k};
}

std::optional<std::pair<Int, Int>> negative_pell_solution(const Int& D) {
    CFExpansion cf = cf_sqrt(D);
    const size_t ell = cf.period.size();
    if (ell % 2 == 0) return std::nullopt;
    Int h = cf.a0, hp = 1;
    Int k = 1, kp = 0;
    for (size_t i = 0; i + 1 < ell; ++i) {
        Int a = cf.period[i];
        Int h2 = a * h + hp, k2 = a * k + kp;
        hp = h;
        kp = k;
        h = h2;
        k = k2;
    }
    return std::make_pair(h, k);
}

std::pair<Int, Int> automorph_apply(const Int& D, const std::pair<Int, Int>& unit,
                                    std::pair<Int, Int> sol, long long k) {
    const Int& x1 = unit.first;
    const Int& y1 = unit.second;
    bool inverse = k < 0;
    unsigned long long n = inverse ? static_cast<unsigned long long>(-(k + 1)) + 1
                                   : static_cast<unsigned long long>(k);
    for (unsigned long long i = 0; i < n; ++i) {
        Int x = sol.first, y = sol.second;
        if (!inverse)
            sol = {x * x1 + D * y * y1, x * y1 + y * x1};
        else
            sol = {x * x1 - D * y * y1, y * x1 - x * y1};
    }
    return sol;
}

namespace {

using Key = std::tuple<Int, Int, int, int>;

Key rep_key(const PellSolution& s) {
    return {abs_int(s.y), abs_int(s.x), s.y < 0 ? 1 : 0, s.x < 0 ? 1 : 0};
}

PellSolution step(const Int& D, const std::pair<Int, Int>& u, const PellSolution& s,
                  long long dir) {
    auto t = automorph_apply(D, u, {s.x, s.y}, dir);
    return {t.first, t.second};
}

// Canonical class representative: minimum of {+-u^k s} under
// (|y|, |x|, y<0, x<0).  Greedy descent to the valley, then a +-2 window and
// the negated orbit cover ties.
PellSolution canonical_rep(const Int& D, const std::pair<Int, Int>& u, PellSolution s) {
    std::vector<PellSolution> candidates;
    for (int sign = 0; sign < 2; ++sign) {
        PellSolution w = sign ? PellSolution{-s.x, -s.y} : s;
        while (true) {
            PellSolution fwd = step(D, u, w, 1);
            PellSolution bwd = step(D, u, w, -1);
            if (rep_key(fwd) < rep_key(w))
                w = fwd;
            else if (rep_key(bwd) < rep_key(w))
                w = bwd;
            else
                break;
        }
        for (long long k = -2; k <= 2; ++k) {
            PellSolution c = w;
            c = step(D, u, c, k);
            candidates.push_back(c);
            candidates.push_back({-c.x, -c.y});
        }
    }
    return *std::min_element(candidates.begin(), candidates.end(),
                             [](const PellSolution& a, const PellSolution& b) {
                                 return rep_key(a) < rep_key(b);
                             });
}

// PQa-based class search (LMM): for each f with f^2 | N and m = N/f^2, run the
// continued fraction of (z + sqrt(D))/|m| for each z^2 = D (mod |m|); a
// partial quotient with Q = +-1 yields (G, B) with G^2 - D B^2 = +-m, fixed up
// through the negative-Pell unit when the sign is wrong.
std::vector<PellSolution> lmm_class_reps(const Int& D, const Int& N,
                                         const std::pair<Int, Int>& unit) {
    auto neg_unit = negative_pell_solution(D);
    const Int s = isqrt_floor(D);
    std::set<std::pair<Int, Int>> reps;

    // f runs over the exponent lattice of the square divisors of N.
    auto nf = detail::factorize(abs_int(N));
    std::vector<unsigned> caps;
    caps.reserve(nf.size());
    for (const auto& [p, e] : nf) caps.push_back(e / 2);
    std::vector<unsigned> idx(caps.size(), 0);
    while (true) {
        Int f = 1;
        for (size_t i = 0; i < idx.size(); ++i)
            for (unsigned j = 0; j < idx[i]; ++j) f *= nf[i].first;
        Int m = N / (f * f);
        Int am = abs_int(m);
        for (const Int& z : detail::sqrt_mod(D, am)) {
            Int P = z, Q = am;
            Int Gm1 = am, Gm2 = -z; // G_{-1} = Q_0, G_{-2} = -P_0
            Int Bm1 = 0, Bm2 = 1;
            std::set<std::pair<Int, Int>> seen;
            while (seen.insert({P, Q}).second) {
                Int a = cf_floor(P, Q, s);
                Int G = a * Gm1 + Gm2;
                Int B = a * Bm1 + Bm2;
                Gm2 = Gm1;
                Gm1 = G;
                Bm2 = Bm1;
                Bm1 = B;
                P = a * Q - P;
                Q = (D - P * P) / Q;
                if (Q == 1 || Q == -1) {
                    Int v = G * G - D * B * B;
                    std::optional<std::pair<Int, Int>> hit;
                    if (v == m) {
                        hit = {f * G, f * B};
                    } else if (v == -m && neg_unit) {
                        const Int& t = neg_unit->first;
                        const Int& w = neg_unit->second;
                        hit = {f * (G * t + B * w * D), f * (G * w + B * t)};
                    }
                    if (hit) {
                        PellSolution r = canonical_rep(D, unit, {hit->first, hit->second});
                        reps.insert({r.x, r.y});
                    }
                }
            }
        }
        size_t carry = 0;
        while (carry < idx.size() && idx[carry] == caps[carry]) idx[carry++] = 0;
        if (carry == idx.size()) break;
        ++idx[carry];
    }

    std::vector<PellSolution> out;
    out.reserve(reps.size());
    for (const auto& [x, y] : reps) out.push_back({x, y});
    std::sort(out.begin(), out.end());
    return out;
}

// Classical bounded scan: every class has a representative with
// 0 <= y <= sqrt(|N| (x1 + 1) / (2D)).
std::vector<PellSolution> scan_class_reps(const Int& D, const Int& N,
                                          const std::pair<Int, Int>& unit,
                                          const Int& y_bound) {
    std::set<std::pair<Int, Int>> reps;
    for (Int y = 0; y <= y_bound; ++y) {
        Int t = N + D * y * y;
        if (t < 0 || !is_perfect_square(t)) continue;
        Int x = isqrt_floor(t);
        PellSolution r = canonical_rep(D, unit, {x, y});
        reps.insert({r.x, r.y});
        if (x != 0) {
            r = canonical_rep(D, unit, {-x, y});
            reps.insert({r.x, r.y});
        }
    }
    std::vector<PellSolution> out;
    out.reserve(reps.size());
    for (const auto& [x, y] : reps) out.push_back({x, y});
    std::sort(out.begin(), out.end());
    return out;
}

void push_unique(std::vector<PellSolution>& v, PellSolution s) {
    if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(std::move(s));
}

// Divisors of n > 0, ascending.
std::vector<Int> divisors(const Int& n) {
    std::vector<Int> small, big;
    for (Int i = 1; i * i <= n; ++i) {
        if (n % i != 0) continue;
        small.push_back(i);
        if (i * i != n) big.push_back(n / i);
    }
    for (auto it = big.rbegin(); it != big.rend(); ++it) small.push_back(*it);
    return small;
}

} // namespace

PellSolutionSet solve_general(const PellProblem& p) {
    const Int& D = p.D;
    const Int& N = p.N;
    PellSolutionSet set;
    set.problem = p;

    if (D < 0) {
        // Ellipse x^2 + |D| y^2 = N: finitely many lattice points.
        if (N < 0) {
            set.kind = PellKind::Empty;
            return set;
        }
        Int aD = -D;
        Int y_max = isqrt_floor(N / aD);
        for (Int y = 0; y <= y_max; ++y) {
            Int t = N - aD * y * y;
            if (t < 0 || !is_perfect_square(t)) continue;
            Int x = isqrt_floor(t);
            push_unique(set.solutions, {x, y});
            if (x != 0) push_unique(set.solutions, {-x, y});
            if (y != 0) {
                push_unique(set.solutions, {x, -y});
                if (x != 0) push_unique(set.solutions, {-x, -y});
            }
        }
        std::sort(set.solutions.begin(), set.solutions.end());
        set.kind = set.solutions.empty() ? PellKind::Empty : PellKind::FiniteList;
        return set;
    }

    if (D == 0) {
        // x^2 = N.
        if (N == 0) {
            set.kind = PellKind::DegenerateLines;
            set.lines.push_back({0, 0});
        } else if (N > 0 && is_perfect_square(N)) {
            Int r = isqrt_floor(N);
            set.kind = PellKind::DegenerateLines;
            set.lines.push_back({-r, 0});
            set.lines.push_back({r, 0});
        } else {
            set.kind = PellKind::Empty;
        }
        return set;
    }

    if (is_perfect_square(D)) {
        Int s = isqrt_floor(D);
        if (N == 0) {
            // (x - sy)(x + sy) = 0: two lines through the origin.
            set.kind = PellKind::DegenerateLines;
            set.lines.push_back({0, -s});
            set.lines.push_back({0, s});
            return set;
        }
        // (x - sy)(x + sy) = N: factor over divisor pairs e * g = N.
        Int absN = abs_int(N);
        for (const Int& e0 : divisors(absN)) {
            for (int sign = 0; sign < 2; ++sign) {
                Int e = sign ? Int(-e0) : e0;
                Int g = N / e;
                Int sum = e + g, diff = g - e;
                if (sum % 2 != 0) continue;
                if (diff % (2 * s) != 0) continue;
                push_unique(set.solutions, {sum / 2, diff / (2 * s)});
            }
        }
        std::sort(set.solutions.begin(), set.solutions.end());
        set.kind = set.solutions.empty() ? PellKind::Empty : PellKind::FiniteList;
        return set;
    }

    // D > 0 non-square: hyperbola with automorph group {+-u^k}.
    auto unit = fundamental_solution(D);
    set.automorph = unit;
    if (N == 0) {
        set.kind = PellKind::FiniteList;
        set.solutions.push_back({0, 0});
        return set;
    }

    // Every class has a fundamental representative with y below the classical
    // bound; scan when that is cheap, otherwise run the PQa class search.
    Int bound_sq = abs_int(N) * (unit.first + 1) / (2 * D);
    Int y_bound = isqrt_floor(bound_sq) + 1;
    if (y_bound <= 20000)
        set.solutions = scan_class_reps(D, N, unit, y_bound);
    else
        set.solutions = lmm_class_reps(D, N, unit);
    set.kind = set.solutions.empty() ? PellKind::Empty : PellKind::InfiniteClasses;
    return set;
}

std::vector<PellSolution> brute_force_solutions(const PellProblem& p, const Int& y_max) {
    std::vector<PellSolution> out;
    for (Int y = -y_max; y <= y_max; ++y) {
        Int t = p.N + p.D * y * y;
        if (t < 0 || !is_perfect_square(t)) continue;
        Int x = isqrt_floor(t);
        out.push_back({-x, y});
        if (x != 0) out.push_back({x, y});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<PellSolution> expand_solutions(const PellSolutionSet& set, const Int& y_max) {
    std::set<std::pair<Int, Int>> acc;
    auto add = [&](const PellSolution& s) {
        if (abs_int(s.y) <= y_max) acc.insert({s.x, s.y});
    };

    switch (set.kind) {
    case PellKind::Empty:
        break;
    case PellKind::FiniteList:
        for (const auto& s : set.solutions) add(s);
        break;
    case PellKind::DegenerateLines:
        for (const auto& line : set.lines)
            for (Int y = -y_max; y <= y_max; ++y)
                acc.insert({line.x0 + line.slope * y, y});
        break;
    case PellKind::InfiniteClasses: {
        const Int& D = set.problem.D;
        const auto& u = *set.automorph;
        for (const auto& r : set.solutions) {
            for (int sign = 0; sign < 2; ++sign) {
                PellSolution base = sign ? PellSolution{-r.x, -r.y} : r;
                for (long long dir : {1LL, -1LL}) {
                    // |y| grows geometrically away from the class valley;
                    // three consecutive misses means we are past it for good.
                    PellSolution s = base;
                    int strikes = 0;
                    while (strikes < 3) {
                        if (abs_int(s.y) <= y_max)
                            strikes = 0, acc.insert({s.x, s.y});
                        else
                            ++strikes;
                        PellSolution next = step(D, u, s, dir);
                        if (next == s) break; // only for the fixed point (0,0)
                        s = next;
                    }
                }
            }
        }
        break;
    }
    }

    std::vector<PellSolution> out;
    out.reserve(acc.size());
    for (const auto& [x, y] : acc) out.push_back({x, y});
    std::sort(out.begin(), out.end());
    return out;
}

bool same_class(const PellProblem& p, const PellSolution& s, const PellSolution& t) {
    if (p.N == 0) return s == t;
    Int c1 = s.x * t.x - p.D * s.y * t.y;
    Int c2 = s.x * t.y - t.x * s.y;
    return c1 % p.N == 0 && c2 % p.N == 0;
}

ConicKind classify_conic(const Mat2Z& L, Orientation o) {
    Int dt = det(L);
    Int expected = o == Orientation::Preserving ? 1 : -1;
    if (dt != expected)
        throw OrientationMismatchError("classify_conic: det = " + dt.get_str() +
                                       " does not match orientation " + to_string(o));
    Int delta = o == Orientation::Preserving ? trace(L) : Int(L.a - L.d);
    Int disc = delta * delta - 4;
    if (disc > 0) return ConicKind::Hyperbola;
    if (disc < 0) return ConicKind::Ellipse;
    return ConicKind::DegenerateParallelLines;
}

std::string to_string(PellKind k) {
    switch (k) {
    case PellKind::Empty: return "empty";
    case PellKind::FiniteList: return "finite_list";
    case PellKind::InfiniteClasses: return "infinite_classes";
    case PellKind::DegenerateLines: return "degenerate_lines";
    }
    return "unknown";
}

std::string to_string(ConicKind k) {
    switch (k) {
    case ConicKind::Hyperbola: return "hyperbola";
    case ConicKind::Ellipse: return "ellipse";
    case ConicKind::DegenerateParallelLines: return "degenerate_parallel_lines";
    }
    return "unknown";
}

} // namespace revpell
