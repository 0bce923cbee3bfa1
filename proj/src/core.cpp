#include "dioph/core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "dioph/error.hpp"

namespace dioph {

const char* errc_name(Errc e) {
  switch (e) {
    case Errc::InsufficientPrecision: return "InsufficientPrecision";
    case Errc::NonSymmetricResult: return "NonSymmetricResult";
    case Errc::DependentVectors: return "DependentVectors";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::CriterionFails: return "CriterionFails";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::AdmissibilityViolation: return "AdmissibilityViolation";
    case Errc::NoSeedFound: return "NoSeedFound";
    case Errc::SeedInvalid: return "SeedInvalid";
    case Errc::FirstCoordinateZero: return "FirstCoordinateZero";
    case Errc::InsufficientTail: return "InsufficientTail";
    case Errc::NotConverged: return "NotConverged";
    case Errc::NoSignChange: return "NoSignChange";
    case Errc::DomainError: return "DomainError";
    case Errc::Inconclusive: return "Inconclusive";
    case Errc::NotFound: return "NotFound";
    case Errc::HypothesisFails: return "HypothesisFails";
    case Errc::LinearAlgebraSingular: return "LinearAlgebraSingular";
    case Errc::IntegralityFails: return "IntegralityFails";
    case Errc::VolumeInequalityFails: return "VolumeInequalityFails";
    case Errc::SearchExhausted: return "SearchExhausted";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Mat2 Mat2::identity() { return {1, 0, 0, 1}; }
Mat2 Mat2::J() { return {0, 1, -1, 0}; }

BigInt Mat2::sup_norm() const {
  BigInt m = ::abs(a);
  for (const BigInt* v : {&b, &c, &d}) {
    if (::abs(*v) > m) m = ::abs(*v);
  }
  return m;
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
          x.c * y.b + x.d * y.d};
}
Mat2 operator*(const BigInt& s, const Mat2& x) { return {s * x.a, s * x.b, s * x.c, s * x.d}; }
Mat2 operator+(const Mat2& x, const Mat2& y) {
  return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
}
Mat2 operator-(const Mat2& x, const Mat2& y) {
  return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
}
bool operator==(const Mat2& x, const Mat2& y) {
  return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
}

const BigInt& Point3::operator[](int i) const { return i == 0 ? x0 : i == 1 ? x1 : x2; }
BigInt& Point3::operator[](int i) { return i == 0 ? x0 : i == 1 ? x1 : x2; }

BigInt Point3::sup_norm() const {
  BigInt m = ::abs(x0);
  if (::abs(x1) > m) m = ::abs(x1);
  if (::abs(x2) > m) m = ::abs(x2);
  return m;
}

std::string Point3::str() const {
  return "(" + x0.get_str() + "," + x1.get_str() + "," + x2.get_str() + ")";
}

Point3 Point3::from_symmetric(const Mat2& m) {
  if (!m.symmetric())
    throw Error(Errc::NonSymmetricResult,
                "off-diagonal entries " + m.b.get_str() + " and " + m.c.get_str() + " differ");
  return {m.a, m.b, m.d};
}

Point3 operator+(const Point3& x, const Point3& y) {
  return {x.x0 + y.x0, x.x1 + y.x1, x.x2 + y.x2};
}
Point3 operator-(const Point3& x, const Point3& y) {
  return {x.x0 - y.x0, x.x1 - y.x1, x.x2 - y.x2};
}
Point3 operator*(const BigInt& s, const Point3& x) { return {s * x.x0, s * x.x1, s * x.x2}; }
bool operator==(const Point3& x, const Point3& y) {
  return x.x0 == y.x0 && x.x1 == y.x1 && x.x2 == y.x2;
}

BigInt dot(const Point3& x, const Point3& y) { return x.x0 * y.x0 + x.x1 * y.x1 + x.x2 * y.x2; }

Point3 wedge(const Point3& x, const Point3& y) {
  return {x.x1 * y.x2 - x.x2 * y.x1, -(x.x0 * y.x2 - x.x2 * y.x0), x.x0 * y.x1 - x.x1 * y.x0};
}

BigInt det3(const Point3& x, const Point3& y, const Point3& z) {
  return x.x0 * (y.x1 * z.x2 - y.x2 * z.x1) - x.x1 * (y.x0 * z.x2 - y.x2 * z.x0) +
         x.x2 * (y.x0 * z.x1 - y.x1 * z.x0);
}

Mat2 bracket_matrix(const Point3& x, const Point3& y, const Point3& z) {
  const Mat2 J = Mat2::J();
  return BigInt(-1) * (x.matrix() * J * z.matrix() * J * y.matrix());
}

Point3 bracket(const Point3& x, const Point3& y, const Point3& z) {
  return Point3::from_symmetric(bracket_matrix(x, y, z));
}

BigInt content(const Point3& x) { return content(x.vec()); }

BigInt content(const IntVec& v) {
  BigInt g = 0;
  for (const auto& e : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
  return g;
}

BigRat height_subspace(const Point3& x, const Point3& y) {
  Point3 w = wedge(x, y);
  if (w.is_zero()) throw Error(Errc::DependentVectors, "wedge is zero");
  BigRat h(w.sup_norm(), content(w));
  h.canonicalize();
  return h;
}

bool is_prime(const BigInt& p) { return p >= 2 && mpz_probab_prime_p(p.get_mpz_t(), 40) > 0; }

Place Place::prime(const BigInt& p) {
  if (!is_prime(p)) throw Error(Errc::InvalidArgument, p.get_str() + " is not prime");
  Place pl;
  pl.p_ = p;
  return pl;
}

std::string Place::name() const { return is_infinite() ? "inf" : p_.get_str(); }

long valuation(const BigInt& m, const BigInt& p) {
  if (m == 0) throw Error(Errc::InvalidArgument, "valuation of zero");
  if (p == 2) return static_cast<long>(mpz_scan1(m.get_mpz_t(), 0));
  BigInt r = m;
  return static_cast<long>(mpz_remove(r.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t()));
}

long valuation(const BigRat& q, const BigInt& p) {
  return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

BigInt pow(const BigInt& b, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

BigRat pow_p(const BigInt& p, long e) {
  if (e >= 0) return BigRat(pow(p, static_cast<unsigned long>(e)));
  BigRat r(BigInt(1), pow(p, static_cast<unsigned long>(-e)));
  return r;
}

BigRat abs_at(const BigInt& m, const Place& place) {
  if (m == 0) return 0;
  if (place.is_infinite()) return BigRat(::abs(m));
  return pow_p(place.p(), -valuation(m, place.p()));
}

BigRat abs_at(const BigRat& q, const Place& place) {
  if (q == 0) return 0;
  if (place.is_infinite()) return ::abs(q);
  return pow_p(place.p(), -valuation(q, place.p()));
}

BigRat sup_norm(const Point3& x, const Place& place) { return sup_norm(x.vec(), place); }

BigRat sup_norm(const IntVec& x, const Place& place) {
  BigRat m = 0;
  for (const auto& e : x) {
    BigRat a = abs_at(e, place);
    if (a > m) m = a;
  }
  return m;
}

BigRat make_rat(const BigInt& n, const BigInt& d) {
  if (d == 0) throw Error(Errc::InvalidArgument, "zero denominator");
  BigRat q(n, d);
  q.canonicalize();
  return q;
}

BigInt floor_rat(const BigRat& q) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

BigInt ceil_rat(const BigRat& q) {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

BigInt round_rat(const BigRat& q) {
  const BigRat half(1, 2);
  if (q >= 0) return floor_rat(q + half);
  return -floor_rat(-q + half);
}

BigRat abs(const BigRat& q) { return q < 0 ? BigRat(-q) : q; }

double log_abs(const BigInt& m) {
  if (m == 0) return -INFINITY;
  long e = 0;
  double d = mpz_get_d_2exp(&e, m.get_mpz_t());
  return std::log(std::fabs(d)) + static_cast<double>(e) * std::log(2.0);
}

double log_abs(const BigRat& q) { return log_abs(q.get_num()) - log_abs(q.get_den()); }

IntPoly::IntPoly(std::vector<BigInt> low_first) : c(std::move(low_first)) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

IntPoly IntPoly::from_high_first(const std::vector<BigInt>& coeffs) {
  return IntPoly(std::vector<BigInt>(coeffs.rbegin(), coeffs.rend()));
}

IntPoly IntPoly::monomial(const BigInt& coef, int deg) {
  std::vector<BigInt> v(static_cast<size_t>(deg) + 1, BigInt(0));
  v.back() = coef;
  return IntPoly(std::move(v));
}

BigInt IntPoly::coef(int i) const {
  return (i >= 0 && i < static_cast<int>(c.size())) ? c[static_cast<size_t>(i)] : BigInt(0);
}

BigInt IntPoly::height() const {
  BigInt h = 0;
  for (const auto& e : c)
    if (::abs(e) > h) h = ::abs(e);
  return h;
}

IntPoly IntPoly::derivative() const {
  std::vector<BigInt> d;
  for (size_t i = 1; i < c.size(); ++i) d.push_back(BigInt(static_cast<unsigned long>(i)) * c[i]);
  return IntPoly(std::move(d));
}

BigInt IntPoly::eval(const BigInt& t) const { return horner<BigInt>(t, BigInt(0)); }
BigRat IntPoly::eval(const BigRat& t) const { return horner<BigRat>(t, BigRat(0)); }

std::vector<BigInt> IntPoly::high_first() const {
  if (c.empty()) return {BigInt(0)};
  return std::vector<BigInt>(c.rbegin(), c.rend());
}

std::string IntPoly::str() const {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const BigInt& a = c[static_cast<size_t>(i)];
    if (a == 0) continue;
    BigInt m = ::abs(a);
    if (!first) os << (a < 0 ? " - " : " + ");
    else if (a < 0) os << "-";
    if (m != 1 || i == 0) os << m.get_str();
    if (i >= 1) os << "T";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

IntPoly operator+(const IntPoly& x, const IntPoly& y) {
  std::vector<BigInt> r(std::max(x.c.size(), y.c.size()), BigInt(0));
  for (size_t i = 0; i < r.size(); ++i) r[i] = x.coef(static_cast<int>(i)) + y.coef(static_cast<int>(i));
  return IntPoly(std::move(r));
}

IntPoly operator-(const IntPoly& x, const IntPoly& y) { return x + BigInt(-1) * y; }

IntPoly operator*(const BigInt& s, const IntPoly& x) {
  std::vector<BigInt> r = x.c;
  for (auto& e : r) e *= s;
  return IntPoly(std::move(r));
}

bool operator==(const IntPoly& x, const IntPoly& y) { return x.c == y.c; }

IntPoly parse_poly(const std::string& text) {
  std::vector<BigInt> v;
  std::string tok;
  std::istringstream is(text);
  while (std::getline(is, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
    if (tok.empty()) continue;
    BigInt b;
    if (b.set_str(tok, 10) != 0) throw Error(Errc::InvalidArgument, "bad coefficient '" + tok + "'");
    v.push_back(b);
  }
  if (v.empty()) throw Error(Errc::InvalidArgument, "empty coefficient list");
  return IntPoly::from_high_first(v);
}

int rank(const std::vector<IntVec>& rows) {
  std::vector<IntVec> m = rows;
  if (m.empty()) return 0;
  const size_t cols = m[0].size();
  int r = 0;
  for (size_t col = 0; col < cols && r < static_cast<int>(m.size()); ++col) {
    size_t piv = static_cast<size_t>(r);
    while (piv < m.size() && m[piv][col] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[static_cast<size_t>(r)]);
    const IntVec& pr = m[static_cast<size_t>(r)];
    for (size_t i = static_cast<size_t>(r) + 1; i < m.size(); ++i) {
      if (m[i][col] == 0) continue;
      BigInt f = m[i][col];
      for (size_t j = 0; j < cols; ++j) m[i][j] = m[i][j] * pr[col] - f * pr[j];
      BigInt g = content(m[i]);
      if (g > 1)
        for (auto& e : m[i]) mpz_divexact(e.get_mpz_t(), e.get_mpz_t(), g.get_mpz_t());
    }
    ++r;
  }
  return r;
}

BigInt det(const std::vector<IntVec>& rows) {
  const size_t n = rows.size();
  if (n == 0) return 1;
  std::vector<IntVec> m = rows;
  BigInt prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t piv = k + 1;
      while (piv < n && m[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        BigInt t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = t;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

std::vector<IntVec> adjugate(const std::vector<IntVec>& rows) {
  const size_t n = rows.size();
  std::vector<IntVec> adj(n, IntVec(n, BigInt(0)));
  if (n == 1) {
    adj[0][0] = 1;
    return adj;
  }
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      std::vector<IntVec> minor;
      for (size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        IntVec row;
        for (size_t c = 0; c < n; ++c)
          if (c != j) row.push_back(rows[r][c]);
        minor.push_back(std::move(row));
      }
      BigInt d = det(minor);
      if ((i + j) % 2) d = -d;
      adj[j][i] = d;
    }
  }
  return adj;
}

}  // namespace dioph
