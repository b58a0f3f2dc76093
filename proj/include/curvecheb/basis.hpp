#pragma once

#include <span>
#include <string>
#include <vector>

#include "curvecheb/curve.hpp"
#include "curvecheb/poly.hpp"

namespace curvecheb {

/// S: standard monomials in graded order, increasing z2-power per degree.
/// C: monomials of degree <= d-2, then blocks z1^r v_1^q, ..., z1^r v_d^q.
enum class BasisId { S, C };

std::string to_string(BasisId id);
BasisId basis_from_string(const std::string& s);

/// coeff * z1^a * z2^b * v_k^q kept in product form so values can be
/// computed without expanding the power.
struct BasisElement {
  BasisId basis = BasisId::S;
  int index = 1;  // 1-based position in the graded ordering
  int degree = 0;
  BivarPoly poly;  // normal form
  int z1pow = 0;
  int z2pow = 0;
  int vindex = 0;  // 0 when there is no v factor
  int vpow = 0;

  cplx eval(const Curve& curve, cplx z1, cplx z2) const;
  std::string label() const;
};

/// Number of basis elements of total degree exactly m (same for S and C).
int basis_block_size(const Curve& curve, int m);
/// m_n: number of basis elements of degree <= n.
int basis_count_to_degree(const Curve& curve, int n);
/// l_n: sum of degrees of the first m_n elements.
long long basis_degree_sum(const Curve& curve, int n);
/// Degree of the element at a 1-based index.
int basis_degree_of(const Curve& curve, int index);

BasisElement basis_element(const Curve& curve, BasisId id, int index);
std::vector<BasisElement> basis_enumerate(const Curve& curve, BasisId id, int count);

/// Coefficients of p (reduced first) in the graded basis, up to the last
/// element of degree deg(p). Solved block by block from the top degree.
std::vector<cplx> expand_in_basis(const Curve& curve, const BivarPoly& p, BasisId id);
BivarPoly reconstruct(const Curve& curve, std::span<const cplx> coeffs, BasisId id);

/// entries[j][k-1] = c_jk: C-coefficient of z1^j z2^(d-1-j) on v_k.
struct CjkTable {
  std::vector<std::vector<cplx>> entries;
};

CjkTable cjk_table(const Curve& curve);

/// normal_form(q v_k - qhat(1, lambda_k) z1^deg(q) v_k); its degree stays
/// below deg(q) + d - 1.
BivarPoly polyprop_residual(const Curve& curve, const BivarPoly& q, int k);

}  // namespace curvecheb
