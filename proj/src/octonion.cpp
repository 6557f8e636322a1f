#include "loopsmith/octonion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>

namespace loopsmith {

namespace {

// Doubling product on coordinate vectors of length 1, 2, 4 or 8, used only
// to generate the basis structure constants.
std::vector<long long> cd_conj(std::vector<long long> v) {
    for (std::size_t i = 1; i < v.size(); ++i) v[i] = -v[i];
    return v;
}

std::vector<long long> cd_mul(const std::vector<long long>& a, const std::vector<long long>& b) {
    std::size_t n = a.size();
    if (n == 1) return {a[0] * b[0]};
    std::size_t h = n / 2;
    std::vector<long long> a1(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(h)), a2(a.begin() + static_cast<std::ptrdiff_t>(h), a.end());
    std::vector<long long> c1(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(h)), c2(b.begin() + static_cast<std::ptrdiff_t>(h), b.end());
    std::vector<long long> f1 = cd_mul(a1, c1);
    std::vector<long long> f2 = cd_mul(cd_conj(c2), a2);
    std::vector<long long> s1 = cd_mul(c2, a1);
    std::vector<long long> s2 = cd_mul(a2, cd_conj(c1));
    std::vector<long long> out(n);
    for (std::size_t i = 0; i < h; ++i) {
        out[i] = f1[i] - f2[i];
        out[h + i] = s1[i] + s2[i];
    }
    return out;
}

OctStructure generate_structure() {
    OctStructure st{};
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            std::vector<long long> a(8, 0), b(8, 0);
            a[static_cast<std::size_t>(i)] = 1;
            b[static_cast<std::size_t>(j)] = 1;
            std::vector<long long> r = cd_mul(a, b);
            int k = -1, s = 0;
            for (int t = 0; t < 8; ++t)
                if (r[static_cast<std::size_t>(t)] != 0) {
                    k = t;
                    s = static_cast<int>(r[static_cast<std::size_t>(t)]);
                }
            st.sign[i][j] = s;
            st.index[i][j] = k;
        }
    return st;
}

constexpr long long kCoordBudget = 1LL << 20;

// Product at four times the value scale (inputs are doubled, so the raw
// bilinear sum is 4x). No lattice or budget policy applied here.
std::array<long long, 8> raw_mul4(const OctonionH& x, const OctonionH& y) {
    const OctStructure& st = oct_structure();
    std::array<long long, 8> s{};
    for (int i = 0; i < 8; ++i) {
        long long xi = x[static_cast<std::size_t>(i)];
        if (xi == 0) continue;
        for (int j = 0; j < 8; ++j) {
            long long yj = y[static_cast<std::size_t>(j)];
            if (yj == 0) continue;
            s[static_cast<std::size_t>(st.index[i][j])] += st.sign[i][j] * xi * yj;
        }
    }
    return s;
}

bool is_unit_candidate(const OctonionH& x) {
    long long n4 = 0;
    int nz = 0;
    bool ones = true, two = false;
    for (long long v : x) {
        n4 += v * v;
        if (v != 0) {
            ++nz;
            if (v != 1 && v != -1) ones = false;
            if (v == 2 || v == -2) two = true;
        }
    }
    if (n4 != 4) return false;
    return (nz == 1 && two) || (nz == 4 && ones);
}

} // namespace

const OctStructure& oct_structure() {
    static const OctStructure st = generate_structure();
    return st;
}

OctonionF oct_mul(const OctonionF& x, const OctonionF& y) {
    const OctStructure& st = oct_structure();
    OctonionF r{};
    for (int i = 0; i < 8; ++i) {
        double xi = x[static_cast<std::size_t>(i)];
        for (int j = 0; j < 8; ++j)
            r[static_cast<std::size_t>(st.index[i][j])] += st.sign[i][j] * xi * y[static_cast<std::size_t>(j)];
    }
    return r;
}

OctonionF oct_conj(OctonionF x) {
    for (std::size_t i = 1; i < 8; ++i) x[i] = -x[i];
    return x;
}

double oct_norm2(const OctonionF& x) {
    double s = 0;
    for (double v : x) s += v * v;
    return s;
}

OctonionH oct_mul(const OctonionH& x, const OctonionH& y) {
    for (long long v : x)
        if (v > kCoordBudget || v < -kCoordBudget)
            throw loop_error(errc::overflow, "octonion coordinate exceeds the exact-arithmetic budget");
    for (long long v : y)
        if (v > kCoordBudget || v < -kCoordBudget)
            throw loop_error(errc::overflow, "octonion coordinate exceeds the exact-arithmetic budget");
    std::array<long long, 8> s = raw_mul4(x, y);
    OctonionH out{};
    for (std::size_t k = 0; k < 8; ++k) {
        if (s[k] % 2 != 0)
            throw loop_error(errc::overflow, "octonion product leaves the half-integer lattice");
        out[k] = s[k] / 2;
    }
    return out;
}

OctonionH oct_conj(OctonionH x) {
    for (std::size_t i = 1; i < 8; ++i) x[i] = -x[i];
    return x;
}

long long oct_norm4(const OctonionH& x) {
    long long s = 0;
    for (long long v : x) s += v * v;
    return s;
}

OctonionF to_float(const OctonionH& x) {
    OctonionF r{};
    for (std::size_t i = 0; i < 8; ++i) r[i] = static_cast<double>(x[i]) / 2.0;
    return r;
}

double moufang_residual(const OctonionF& x, const OctonionF& y, const OctonionF& z) {
    OctonionF lhs = oct_mul(oct_mul(x, y), oct_mul(z, x));
    OctonionF rhs = oct_mul(oct_mul(x, oct_mul(y, z)), x);
    double s = 0;
    for (std::size_t i = 0; i < 8; ++i) {
        double d = lhs[i] - rhs[i];
        s += d * d;
    }
    return std::sqrt(s);
}

OctavianLoop build_octavian_units() {
    std::vector<OctonionH> units;
    for (int i = 0; i < 8; ++i)
        for (int sgn : {2, -2}) {
            OctonionH u{};
            u[static_cast<std::size_t>(i)] = sgn;
            units.push_back(u);
        }
    // All norm-1 half-vectors: exactly four coordinates +-1/2 (doubled +-1).
    std::vector<OctonionH> candidates;
    for (int mask = 0; mask < 256; ++mask) {
        if (__builtin_popcount(static_cast<unsigned>(mask)) != 4) continue;
        std::vector<int> sup;
        for (int c = 0; c < 8; ++c)
            if (mask & (1 << c)) sup.push_back(c);
        for (int signs = 0; signs < 16; ++signs) {
            OctonionH v{};
            for (int t = 0; t < 4; ++t) v[static_cast<std::size_t>(sup[static_cast<std::size_t>(t)])] = (signs & (1 << t)) ? -1 : 1;
            candidates.push_back(v);
        }
    }
    std::sort(candidates.begin(), candidates.end());

    auto close = [&](const OctonionH& seed, std::set<OctonionH>& out) -> bool {
        out.clear();
        out.insert(units.begin(), units.end());
        out.insert(seed);
        std::vector<OctonionH> frontier(out.begin(), out.end());
        while (!frontier.empty()) {
            if (out.size() > 240) return false;
            std::vector<OctonionH> next;
            std::vector<OctonionH> current(out.begin(), out.end());
            for (const OctonionH& x : frontier)
                for (const OctonionH& y : current)
                    for (int side = 0; side < 2; ++side) {
                        std::array<long long, 8> s = side == 0 ? raw_mul4(x, y) : raw_mul4(y, x);
                        OctonionH p{};
                        for (std::size_t k = 0; k < 8; ++k) {
                            if (s[k] % 2 != 0) return false;
                            p[k] = s[k] / 2;
                        }
                        if (!is_unit_candidate(p)) return false;
                        if (out.insert(p).second) next.push_back(p);
                    }
            frontier = std::move(next);
        }
        return out.size() == 240;
    };

    std::set<OctonionH> closed;
    int seed_index = -1;
    OctonionH seed{};
    for (std::size_t i = 0; i < candidates.size(); ++i)
        if (close(candidates[i], closed)) {
            seed_index = static_cast<int>(i);
            seed = candidates[i];
            break;
        }
    if (seed_index < 0)
        throw loop_error(errc::closure_not_found, "no half-vector seed closes to a 240-element unit system");

    OctavianLoop out;
    out.seed = seed;
    out.seed_index = seed_index;
    OctonionH one{};
    one[0] = 2;
    out.elements.reserve(240);
    out.elements.push_back(one);
    for (const OctonionH& x : closed)
        if (x != one) out.elements.push_back(x);
    std::sort(out.elements.begin() + 1, out.elements.end());
    std::map<OctonionH, int> index;
    for (int i = 0; i < 240; ++i) index[out.elements[static_cast<std::size_t>(i)]] = i;
    std::vector<int> t(240 * 240);
    for (int a = 0; a < 240; ++a)
        for (int b = 0; b < 240; ++b)
            t[static_cast<std::size_t>(a) * 240 + b] =
                index.at(oct_mul(out.elements[static_cast<std::size_t>(a)], out.elements[static_cast<std::size_t>(b)]));
    out.loop = make_loop(240, std::move(t));
    return out;
}

FiniteLoop octavian_factor_by_centre(const OctavianLoop& o) {
    Subloop z = centre_of_loop(o.loop);
    return factor_loop(o.loop, z).loop;
}

} // namespace loopsmith
