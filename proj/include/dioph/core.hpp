#pragma once

// Exact integers and rationals, 2x2 integer matrices, points of Z^3 viewed
// as symmetric matrices, integer polynomials and places of Q.

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace dioph {

using BigInt = mpz_class;
using BigRat = mpq_class;

using IntVec = std::vector<BigInt>;

// Row-major [[a, b], [c, d]].
struct Mat2 {
  BigInt a, b, c, d;

  static Mat2 identity();
  static Mat2 J();  // [[0, 1], [-1, 0]]

  Mat2 transposed() const { return {a, c, b, d}; }
  BigInt det() const { return a * d - b * c; }
  BigInt trace() const { return a + d; }
  bool symmetric() const { return b == c; }
  BigInt sup_norm() const;
};

Mat2 operator*(const Mat2& x, const Mat2& y);
Mat2 operator*(const BigInt& s, const Mat2& x);
Mat2 operator+(const Mat2& x, const Mat2& y);
Mat2 operator-(const Mat2& x, const Mat2& y);
bool operator==(const Mat2& x, const Mat2& y);

// (x0, x1, x2) <-> [[x0, x1], [x1, x2]]
struct Point3 {
  BigInt x0, x1, x2;

  const BigInt& operator[](int i) const;
  BigInt& operator[](int i);

  Mat2 matrix() const { return {x0, x1, x1, x2}; }
  BigInt det() const { return x0 * x2 - x1 * x1; }
  bool is_zero() const { return x0 == 0 && x1 == 0 && x2 == 0; }
  BigInt sup_norm() const;
  IntVec vec() const { return {x0, x1, x2}; }
  std::string str() const;

  // Throws NonSymmetricResult when m is not symmetric.
  static Point3 from_symmetric(const Mat2& m);
};

Point3 operator+(const Point3& x, const Point3& y);
Point3 operator-(const Point3& x, const Point3& y);
Point3 operator*(const BigInt& s, const Point3& x);
bool operator==(const Point3& x, const Point3& y);

BigInt dot(const Point3& x, const Point3& y);
BigInt det3(const Point3& x, const Point3& y, const Point3& z);
Point3 wedge(const Point3& x, const Point3& y);

// -x J z J y, required to be symmetric.
Mat2 bracket_matrix(const Point3& x, const Point3& y, const Point3& z);
Point3 bracket(const Point3& x, const Point3& y, const Point3& z);

BigInt content(const Point3& x);
BigInt content(const IntVec& v);

// H(V) for V = <x, y>, integer inputs only.
BigRat height_subspace(const Point3& x, const Point3& y);

class Place {
 public:
  static Place infinity() { return Place(); }
  // Throws InvalidArgument unless p is prime.
  static Place prime(const BigInt& p);

  bool is_infinite() const { return p_ == 0; }
  const BigInt& p() const { return p_; }
  std::string name() const;

  friend bool operator==(const Place& x, const Place& y) { return x.p_ == y.p_; }

 private:
  Place() = default;
  BigInt p_{0};
};

bool is_prime(const BigInt& p);

// v_p(m) for m != 0.
long valuation(const BigInt& m, const BigInt& p);
long valuation(const BigRat& q, const BigInt& p);
BigInt pow(const BigInt& b, unsigned long e);
BigRat pow_p(const BigInt& p, long e);  // p^e for any sign of e

// |m|_nu; zero maps to zero.
BigRat abs_at(const BigInt& m, const Place& place);
BigRat abs_at(const BigRat& q, const Place& place);

BigRat sup_norm(const Point3& x, const Place& place);
BigRat sup_norm(const IntVec& x, const Place& place);

// n/d in lowest terms; InvalidArgument for d = 0.
BigRat make_rat(const BigInt& n, const BigInt& d);

// Rational rounding helpers.
BigInt floor_rat(const BigRat& q);
BigInt ceil_rat(const BigRat& q);
BigInt round_rat(const BigRat& q);  // half away from zero
BigRat abs(const BigRat& q);

// log(|m|) in double, valid for huge m.
double log_abs(const BigInt& m);
double log_abs(const BigRat& q);

// Integer polynomial, coefficient c[i] of T^i; trailing zeros trimmed.
struct IntPoly {
  std::vector<BigInt> c;

  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> low_first);
  static IntPoly from_high_first(const std::vector<BigInt>& coeffs);
  static IntPoly monomial(const BigInt& coef, int deg);

  int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c.empty(); }
  BigInt coef(int i) const;
  BigInt leading() const { return c.empty() ? BigInt(0) : c.back(); }
  BigInt height() const;
  IntPoly derivative() const;
  BigInt eval(const BigInt& t) const;
  BigRat eval(const BigRat& t) const;
  std::vector<BigInt> high_first() const;
  std::string str() const;

  template <class T>
  T horner(const T& t, const T& zero) const {
    T acc = zero;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
    return acc;
  }
};

IntPoly operator+(const IntPoly& x, const IntPoly& y);
IntPoly operator-(const IntPoly& x, const IntPoly& y);
IntPoly operator*(const BigInt& s, const IntPoly& x);
bool operator==(const IntPoly& x, const IntPoly& y);

// Parses "1,0,-2" (highest degree first).
IntPoly parse_poly(const std::string& text);

// Exact rank of integer vectors of equal length.
int rank(const std::vector<IntVec>& rows);
// Determinant of a square integer matrix (Bareiss).
BigInt det(const std::vector<IntVec>& rows);
// Adjugate of a square integer matrix: adj * m = det * I.
std::vector<IntVec> adjugate(const std::vector<IntVec>& rows);

}  // namespace dioph
