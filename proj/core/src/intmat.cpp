#include "evconj/intmat.hpp"

#include <sstream>
#include <string>

#include "evconj/errors.hpp"

namespace evconj {

bool is_division_matrix(const NonNegMatrix& m) {
  if (m.empty()) return false;
  std::vector<bool> row_hit(m.rows(), false);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    std::size_t ones = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      const Integer& v = m(i, j);
      if (v > 1) return false;
      if (v == 1) {
        ++ones;
        row_hit[i] = true;
      }
    }
    if (ones != 1) return false;
  }
  for (bool hit : row_hit) {
    if (!hit) return false;
  }
  return true;
}

bool is_amalgamation_matrix(const NonNegMatrix& m) { return is_division_matrix(m.transpose()); }

bool verify_elementary(const NonNegMatrix& a, const NonNegMatrix& r, const NonNegMatrix& s,
                       const NonNegMatrix& b) {
  const NonNegMatrix rs = multiply(r, s, "R*S");
  const NonNegMatrix sr = multiply(s, r, "S*R");
  auto shape = [](const NonNegMatrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); };
  if (rs.rows() != a.rows() || rs.cols() != a.cols()) {
    throw DimensionError("R*S is " + shape(rs) + " but A is " + shape(a));
  }
  if (sr.rows() != b.rows() || sr.cols() != b.cols()) {
    throw DimensionError("S*R is " + shape(sr) + " but B is " + shape(b));
  }
  return rs == a && sr == b;
}

namespace {

void check_triple_shapes(const NonNegMatrix& a, const NonNegMatrix& b, const BeeTriple& t) {
  auto shape = [](const NonNegMatrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
  };
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
    throw DimensionError("balanced elementary equivalence needs square matrices of equal size, got " +
                         shape(a) + " and " + shape(b));
  }
  const std::size_t n = a.rows();
  const std::size_t m = t.s.cols();
  if (t.s.rows() != n) {
    throw DimensionError("S is " + shape(t.s) + " but A is " + shape(a));
  }
  if (t.r_a.rows() != m || t.r_a.cols() != n) {
    throw DimensionError("R_A is " + shape(t.r_a) + ", expected " + std::to_string(m) + "x" +
                         std::to_string(n));
  }
  if (t.r_b.rows() != m || t.r_b.cols() != n) {
    throw DimensionError("R_B is " + shape(t.r_b) + ", expected " + std::to_string(m) + "x" +
                         std::to_string(n));
  }
}

}  // namespace

bool verify_balanced_elementary(const NonNegMatrix& a, const NonNegMatrix& b, const BeeTriple& t) {
  check_triple_shapes(a, b, t);
  return multiply(t.s, t.r_a, "S*R_A") == a && multiply(t.s, t.r_b, "S*R_B") == b &&
         multiply(t.r_a, t.s, "R_A*S") == multiply(t.r_b, t.s, "R_B*S");
}

bool InvariantReport::all_pass() const {
  if (!det_equal) return false;
  for (const auto& p : power_relations) {
    if (!p.a_relation || !p.b_relation) return false;
  }
  return true;
}

std::string InvariantReport::first_failure() const {
  std::ostringstream os;
  if (!det_equal) {
    os << "det(A) = " << det_a << " != det(B) = " << det_b;
    return os.str();
  }
  for (const auto& p : power_relations) {
    if (!p.a_relation) {
      os << "A^" << p.n + 1 << " != B" << (p.n > 1 ? "^" + std::to_string(p.n) : "") << " A";
      return os.str();
    }
    if (!p.b_relation) {
      os << "B^" << p.n + 1 << " != A" << (p.n > 1 ? "^" + std::to_string(p.n) : "") << " B";
      return os.str();
    }
  }
  return {};
}

InvariantReport necessary_invariants(const NonNegMatrix& a, const NonNegMatrix& b,
                                     unsigned n_max) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
    throw DimensionError("necessary_invariants needs square matrices of equal size");
  }
  if (n_max == 0) throw ContractViolation("necessary_invariants: n_max must be at least 1");
  InvariantReport report;
  report.det_a = determinant(a);
  report.det_b = determinant(b);
  report.det_equal = report.det_a == report.det_b;
  NonNegMatrix a_pow = a;  // A^n
  NonNegMatrix b_pow = b;  // B^n
  for (unsigned n = 1; n <= n_max; ++n) {
    const NonNegMatrix a_next = a_pow * a;
    const NonNegMatrix b_next = b_pow * b;
    PowerRelation rel;
    rel.n = n;
    rel.a_relation = a_next == b_pow * a;
    rel.b_relation = b_next == a_pow * b;
    report.power_relations.push_back(rel);
    a_pow = a_next;
    b_pow = b_next;
  }
  return report;
}

bool verify_certificate(const BsseCertificate& c) {
  if (c.matrices.empty()) throw StructuralError("certificate has no matrices");
  if (c.matrices.size() != c.links.size() + 1) {
    throw StructuralError("certificate has " + std::to_string(c.matrices.size()) +
                          " matrices for " + std::to_string(c.links.size()) + " links");
  }
  bool ok = true;
  for (std::size_t i = 0; i < c.links.size(); ++i) {
    try {
      if (!verify_balanced_elementary(c.matrices[i], c.matrices[i + 1], c.links[i])) ok = false;
    } catch (const DimensionError& err) {
      throw DimensionError("link " + std::to_string(i) + ": " + err.what());
    }
  }
  return ok;
}

}  // namespace evconj
