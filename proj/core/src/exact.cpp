#include "msd/exact.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <unordered_set>

namespace msd {

Rational::Rational(const Integer& n, const Integer& d) {
    if (d == 0) throw ArgumentError("rational with zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
}

Rational::Rational(long n, long d) : Rational(Integer(n), Integer(d)) {}

Rational Rational::parse(const std::string& s) {
    std::string t;
    for (char c : s)
        if (c != ' ') t += c;
    if (t.empty()) throw ArgumentError("empty rational");
    auto slash = t.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(t));
        return Rational(Integer(t.substr(0, slash)), Integer(t.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw ArgumentError("malformed rational '" + s + "'");
    }
}

std::string Rational::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw ArgumentError("division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::pow(unsigned e) const {
    Rational r(1);
    for (unsigned i = 0; i < e; ++i) r *= *this;
    return r;
}

IntegerMatrix::IntegerMatrix(std::size_t cols, const std::vector<std::vector<long>>& rows)
    : rows_(0), cols_(cols) {
    for (const auto& r : rows) {
        if (r.size() != cols) throw ArgumentError("generator row has wrong length");
        std::vector<Integer> row(r.begin(), r.end());
        add_row(row);
    }
}

void IntegerMatrix::add_row(const std::vector<Integer>& row) {
    if (row.size() != cols_) throw ArgumentError("generator row has wrong length");
    a_.insert(a_.end(), row.begin(), row.end());
    ++rows_;
}

long gcd_l(long a, long b) { return std::gcd(a, b); }
long lcm_l(long a, long b) { return std::lcm(a, b); }

Integer lcm_list(const std::vector<long>& xs) {
    if (xs.empty()) throw ArgumentError("lcm of an empty list");
    Integer r = 1;
    for (long x : xs) {
        if (x <= 0) throw ArgumentError("lcm entries must be positive");
        mpz_lcm_ui(r.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>(x));
    }
    return r;
}

Integer factorial(long n) {
    if (n < 0) throw ArgumentError("factorial of a negative number");
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

Integer multinomial(long total, const std::vector<long>& parts) {
    long s = 0;
    for (long p : parts) {
        if (p < 0) throw ArgumentError("multinomial parts must be non-negative");
        s += p;
    }
    if (s != total) throw ArgumentError("multinomial parts do not sum to the total");
    Integer r = factorial(total);
    for (long p : parts) r /= factorial(p);
    return r;
}

Integer binomial(long n, long k) {
    if (k < 0) return 0;
    if (n >= 0) {
        if (k > n) return 0;
        Integer r;
        mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
        return r;
    }
    // falling factorial n(n-1)...(n-k+1)/k! for negative n
    Integer r;
    mpz_bin_ui(r.get_mpz_t(), Integer(n).get_mpz_t(), static_cast<unsigned long>(k));
    return r;
}

std::vector<Integer> smith_diagonal(IntegerMatrix m) {
    const std::size_t R = m.rows(), C = m.cols();
    std::vector<Integer> diag;
    std::size_t t = 0;
    while (t < R && t < C) {
        // pivot: smallest non-zero magnitude in the remaining block
        std::size_t pr = R, pc = C;
        for (std::size_t i = t; i < R; ++i)
            for (std::size_t j = t; j < C; ++j)
                if (m.at(i, j) != 0 && (pr == R || abs(m.at(i, j)) < abs(m.at(pr, pc)))) {
                    pr = i;
                    pc = j;
                }
        if (pr == R) break;
        for (std::size_t j = 0; j < C; ++j) std::swap(m.at(t, j), m.at(pr, j));
        for (std::size_t i = 0; i < R; ++i) std::swap(m.at(i, t), m.at(i, pc));
        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < R; ++i) {
                if (m.at(i, t) == 0) continue;
                Integer q = m.at(i, t) / m.at(t, t);
                for (std::size_t j = t; j < C; ++j) m.at(i, j) -= q * m.at(t, j);
                if (m.at(i, t) != 0) {
                    for (std::size_t j = 0; j < C; ++j) std::swap(m.at(t, j), m.at(i, j));
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < C; ++j) {
                if (m.at(t, j) == 0) continue;
                Integer q = m.at(t, j) / m.at(t, t);
                for (std::size_t i = t; i < R; ++i) m.at(i, j) -= q * m.at(i, t);
                if (m.at(t, j) != 0) {
                    for (std::size_t i = 0; i < R; ++i) std::swap(m.at(i, t), m.at(i, j));
                    clean = false;
                }
            }
            if (!clean) continue;
            // divisibility of the rest of the block by the pivot
            for (std::size_t i = t + 1; i < R && clean; ++i)
                for (std::size_t j = t + 1; j < C && clean; ++j)
                    if (m.at(i, j) % m.at(t, t) != 0) {
                        for (std::size_t k = t; k < C; ++k) m.at(t, k) += m.at(i, k);
                        clean = false;
                    }
        }
        diag.push_back(abs(m.at(t, t)));
        ++t;
    }
    return diag;
}

std::optional<Integer> lattice_index(std::size_t ambient_rank, const IntegerMatrix& generators) {
    if (generators.rows() > 0 && generators.cols() != ambient_rank)
        throw ArgumentError("generator rows do not match the ambient rank");
    if (generators.rows() == 0) {
        if (ambient_rank == 0) return Integer(1);
        return std::nullopt;
    }
    auto d = smith_diagonal(generators);
    if (d.size() < ambient_rank) return std::nullopt;
    Integer r = 1;
    for (const auto& x : d) r *= x;
    return r;
}

Integer orbit_count(const std::vector<long>& moduli, const std::vector<std::vector<int>>& action_rows) {
    // orbits = |prod Z/k| / |image| = [Z^E : span(action columns, k_e e_e)]
    const std::size_t E = moduli.size();
    IntegerMatrix m(E, std::vector<std::vector<long>>{});
    for (const auto& row : action_rows) {
        if (row.size() != E) throw ArgumentError("action row has wrong length");
        std::vector<Integer> r(row.begin(), row.end());
        m.add_row(r);
    }
    for (std::size_t e = 0; e < E; ++e) {
        if (moduli[e] <= 0) throw ArgumentError("moduli must be positive");
        std::vector<Integer> r(E, 0);
        r[e] = moduli[e];
        m.add_row(r);
    }
    if (E == 0) return 1;
    return *lattice_index(E, m);
}

Integer orbit_count_bfs(const std::vector<long>& moduli, const std::vector<std::vector<int>>& action_rows) {
    const std::size_t E = moduli.size();
    long total = 1;
    for (long k : moduli) total *= k;
    auto encode = [&](const std::vector<long>& x) {
        long c = 0;
        for (std::size_t e = 0; e < E; ++e) c = c * moduli[e] + x[e];
        return c;
    };
    std::vector<char> seen(static_cast<std::size_t>(total), 0);
    long orbits = 0;
    std::vector<long> x(E, 0);
    for (long start = 0; start < total; ++start) {
        if (seen[start]) continue;
        ++orbits;
        std::queue<long> q;
        q.push(start);
        seen[start] = 1;
        while (!q.empty()) {
            long c = q.front();
            q.pop();
            for (std::size_t e = E; e-- > 0;) {
                x[e] = c % moduli[e];
                c /= moduli[e];
            }
            for (const auto& row : action_rows) {
                std::vector<long> y(x);
                for (std::size_t e = 0; e < E; ++e) y[e] = (y[e] + row[e]) % moduli[e];
                long n = encode(y);
                if (!seen[n]) {
                    seen[n] = 1;
                    q.push(n);
                }
            }
        }
    }
    return orbits;
}

int rational_rank(std::vector<std::vector<long>> rows) {
    if (rows.empty()) return 0;
    const std::size_t C = rows[0].size();
    int rank = 0;
    std::size_t r0 = 0;
    for (std::size_t c = 0; c < C && r0 < rows.size(); ++c) {
        std::size_t p = r0;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r0]);
        for (std::size_t i = r0 + 1; i < rows.size(); ++i) {
            if (rows[i][c] == 0) continue;
            long a = rows[r0][c], b = rows[i][c];
            long g = 0;
            for (std::size_t j = 0; j < C; ++j) {
                rows[i][j] = rows[i][j] * a - rows[r0][j] * b;
                g = std::gcd(g, rows[i][j]);
            }
            if (g > 1)
                for (auto& v : rows[i]) v /= g;
        }
        ++r0;
        ++rank;
    }
    return rank;
}

}  // namespace msd
