#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "signednet/eigen_gen.hpp"
#include "signednet/errors.hpp"
#include "signednet/matrix.hpp"

namespace signednet {

namespace detail {

/// True when v is strictly one-signed after sign normalization; the
/// threshold is relative to the largest entry so scaling cannot flip the
/// verdict.
inline bool strictly_positive_vector(Vec v) {
  normalize_sign(v);
  double top = inf_norm(v);
  if (top == 0.0) return false;
  double floor = 1e-9 * top;
  return std::all_of(v.begin(), v.end(), [&](double x) { return x > floor; });
}

}  // namespace detail

/// Does M^k have all entries strictly positive for every large enough k?
/// Decided spectrally: there must be a unique modulus-dominant eigenvalue,
/// it must be real and positive, and both its eigenvectors (of M and of M^T)
/// must be strictly one-signed. The dominance dead-band is 1e-8 of the
/// matrix norm; spectra that tie within it are reported false.
inline bool is_eventually_positive(const Matrix& m) {
  if (m.rows() != m.cols()) fail(Err::LengthMismatch, "square matrices only");
  if (m.rows() == 0) return false;
  double margin = 1e-8 * std::max(1.0, m.frobenius_norm());

  std::vector<std::complex<double>> eig = general_eigenvalues(m);
  double rho = 0.0;
  for (const std::complex<double>& z : eig) rho = std::max(rho, std::abs(z));
  if (rho <= margin) return false;  // nilpotent up to noise

  int dominant = 0;
  std::complex<double> lead;
  for (const std::complex<double>& z : eig)
    if (std::abs(z) > rho - margin) {
      ++dominant;
      lead = z;
    }
  if (dominant != 1) return false;
  if (std::abs(lead.imag()) > margin || lead.real() <= 0.0) return false;

  Vec right = inverse_iteration(m, lead.real());
  Vec left = inverse_iteration(m.transposed(), lead.real());
  return detail::strictly_positive_vector(std::move(right)) &&
         detail::strictly_positive_vector(std::move(left));
}

/// Does exp(tM) have all entries strictly positive for every large enough t?
/// Same shape of test, but dominance is by real part: the rightmost
/// eigenvalue must be real, simple, strictly ahead of every other real part,
/// with strictly one-signed eigenvectors on both sides.
inline bool is_eventually_exp_positive(const Matrix& m) {
  if (m.rows() != m.cols()) fail(Err::LengthMismatch, "square matrices only");
  if (m.rows() == 0) return false;
  double margin = 1e-8 * std::max(1.0, m.frobenius_norm());

  std::vector<std::complex<double>> eig = general_eigenvalues(m);
  double top = eig.back().real();  // sorted by real part

  int dominant = 0;
  std::complex<double> lead;
  for (const std::complex<double>& z : eig)
    if (z.real() > top - margin) {
      ++dominant;
      lead = z;
    }
  if (dominant != 1) return false;  // a tie (or a conjugate pair) oscillates forever
  if (std::abs(lead.imag()) > margin) return false;

  Vec right = inverse_iteration(m, lead.real());
  Vec left = inverse_iteration(m.transposed(), lead.real());
  return detail::strictly_positive_vector(std::move(right)) &&
         detail::strictly_positive_vector(std::move(left));
}

}  // namespace signednet
