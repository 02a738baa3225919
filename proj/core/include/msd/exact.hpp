#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace msd {

using Integer = mpz_class;

/// Exact rational in lowest terms, positive denominator.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(int n) : v_(n) {}
    Rational(const Integer& n) : v_(n) {}
    Rational(const Integer& n, const Integer& d);
    Rational(long n, long d);

    static Rational parse(const std::string& s);

    Integer num() const { return v_.get_num(); }
    Integer den() const { return v_.get_den(); }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    /// "p/q", or "p" when q = 1.
    std::string str() const;

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { Rational r; r.v_ = -a.v_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

    Rational pow(unsigned e) const;

private:
    mpq_class v_;
};

/// Dense integer matrix, row major.
class IntegerMatrix {
public:
    IntegerMatrix() = default;
    IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}
    IntegerMatrix(std::size_t cols, const std::vector<std::vector<long>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Integer& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Integer& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
    void add_row(const std::vector<Integer>& row);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Integer> a_;
};

struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

Integer lcm_list(const std::vector<long>& xs);
Integer multinomial(long total, const std::vector<long>& parts);
Integer binomial(long n, long k);   // zero outside 0 <= k <= n; n may be negative (generalized)
Integer factorial(long n);

/// Diagonal of the Smith normal form (non-zero entries only).
std::vector<Integer> smith_diagonal(IntegerMatrix m);

/// [Z^rank : span(rows)]; nullopt when the span has lower rank.
std::optional<Integer> lattice_index(std::size_t ambient_rank, const IntegerMatrix& generators);

/// Orbits of the subgroup of prod Z/moduli generated by the 0/1 action rows.
Integer orbit_count(const std::vector<long>& moduli, const std::vector<std::vector<int>>& action_rows);
/// Same count by explicit breadth-first search over the finite set.
Integer orbit_count_bfs(const std::vector<long>& moduli, const std::vector<std::vector<int>>& action_rows);

/// Rank over Q of a small integer matrix (rows of equal length).
int rational_rank(std::vector<std::vector<long>> rows);

long gcd_l(long a, long b);
long lcm_l(long a, long b);

}  // namespace msd
