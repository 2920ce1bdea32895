#pragma once

#include "quermass/rational.hpp"

#include <map>
#include <utility>
#include <vector>

namespace quermass::comb {

/// Binomial coefficient C(n, k). Returns 0 for k < 0 or k > n.
Rational binom(long n, long k);

/// Beta function at positive integer arguments, B(a,b) = (a-1)!(b-1)!/(a+b-1)!.
Rational beta_int(long a, long b);

/// Sum_{r=0}^{t} (-1)^r C(n,r). Equals (-1)^t C(n-1,t).
Rational alt_binomial_sum(long n, long t);

/// Closed form the alternating sum must match.
Rational alt_binomial_sum_closed(long n, long t);

struct CorollarySums {
    Rational first;         // sum_{s=1}^{j'} (-1)^s C(n,s)
    Rational second;        // sum_{m=j'+1}^{k} (-1)^{k-m} C(n,m)
    Rational first_closed;  // (-1)^{j'} C(n-1,j') - 1
    Rational second_closed; // C(n-1,k) - (-1)^{k+j'} C(n-1,j')
};

/// Both partial alternating sums together with their closed forms.
/// jprime = 0 is accepted and treated as an empty first sum.
CorollarySums corollary_sums(long n, long jprime, long k);

struct BetaIdentity {
    Rational lhs;   // sum_{m=j}^{k} (-1)^{j+m} / ((m-j)!(k-m)!(m+1)(n-m))
    Rational rhs;   // (B(j+1,k-j+1) + (-1)^{k-j} B(n-k,k-j+1)) / ((k-j)!(n+1))
    bool negative;  // j > n-k-1 and k-j odd
};

/// Requires n > k >= j >= 0.
BetaIdentity beta_identity(long n, long k, long j);

/// sum_{m=0}^{k} (-1)^m C(n-m,k-m) C(n,m) (n-k)(k+1) / (2(m+1)(n-m)).
/// Positive for 1 <= k < n-1.
Rational high_freq_coefficient(long n, long k);

struct LowFreqCoefficient {
    Rational total;      // high-frequency coefficient + extra term
    Rational extra;      // C(n-1,k-1) (n-k)(k+1) / (4(n-1)) * C(n,1)
    bool gate;           // 2(n+1) * extra > C(n,k)(n-k)(k+1)/2
};

/// Coefficient in front of the low-frequency gradient energy, with the
/// gate that justifies using the plain Poincare constant on that part.
LowFreqCoefficient low_freq_coefficient(long n, long k);

struct InvolutionMatrix {
    long n = 0;
    std::vector<std::vector<Rational>> entries; // (n+1) x (n+1), lower triangular
    bool is_involution = false;                 // A*A == Id, checked exactly
};

/// A_{km} = (-1)^m C(n-m, k-m) for k >= m. Verifies A^2 = Id exactly.
InvolutionMatrix involution_check(long n);

struct Eq222Coefficients {
    Rational gradient_coefficient;      // the constant called A
    bool gradient_positive;             // sign of A computed exactly
    bool positivity_condition;          // j'+1+k+1 > n with j' even
    std::map<long, Rational> sigma_coefficients; // m in (j', k]
};

/// Coefficients of the reduced deficit expansion under the I_{j'} constraint.
/// Requires j' even, 0 <= j' < k <= n.
Eq222Coefficients eq222_coefficients(long n, long k, long jprime);

struct TelescopingT {
    Rational direct;        // C(k+2,m+2) - sum_{t=0}^{k-m-1} (t+1) C(k-t,m)
    Rational claimed;       // -(k-m+1), the closed form printed alongside it
    Rational pre_pascal;    // C(k+2,m+2) - ((k+1-m)C(k+1,m+1) - (m+1)C(k+1,m+2) - (k-m+1))
    bool matches_claim;     // direct == claimed
};

/// Direct evaluation of the telescoped binomial expression. The sign of the
/// quoted closed form disagrees with the direct sum; both are reported and
/// never reconciled silently.
TelescopingT telescoping_T(long k, long m);

/// Product identities used by the axisymmetric derivative expansion:
///   (C(n-1,m-1)/m) C(m,m-j) j     == C(n-j,m-j) C(n-1,j-1)
///   (C(n-1,m-1)/m) C(m,m-j) (n-j) == C(n-j,m-j) C(n-1,j)
bool derivative_binomial_identities(long n, long m, long j);

struct IdentityRecord {
    std::string identity;
    std::string params;
    std::string lhs;
    std::string rhs;
    bool pass = false;
};

/// Runs every exact identity for all admissible parameters with n <= n_max.
std::vector<IdentityRecord> run_identity_suite(long n_max);

} // namespace quermass::comb
