#pragma once

#include <string>
#include <utility>
#include <vector>

#include "framelet/evaluable.hpp"
#include "framelet/family.hpp"

namespace framelet {

// The frame operator in Fourier-multiplier form: (Sf)(g) = lambda * G(g) * f(g).
// Frame mode validates the two-sided frame inequality (and throws not-a-frame
// otherwise); span mode only needs the inequality on the density's own
// support, which is what the finite-section and biorthogonality machinery of
// redundant or compactly generated families requires.
class MultiplierOperator {
 public:
  enum class Mode { Frame, Span };

  explicit MultiplierOperator(const GeneratorFamily& fam,
                              Mode mode = Mode::Frame);

  double multiplier(double g) const;  // lambda * G(g), periodic when G is
  double lambda() const { return lambda_; }
  const SpectralDensity& density() const { return density_; }
  const FrameBounds& bounds() const { return bounds_; }

  // Density breakpoints unfolded over [lo, hi] (period translates included).
  std::vector<double> breakpointsOn(double lo, double hi) const;

 private:
  double lambda_ = 1.0;
  SpectralDensity density_;
  FrameBounds bounds_;
};

// (Sf)(g) = lambda * G(g) * f(g) as an evaluator.
EvaluableSpectrum applyMultiplierS(const MultiplierOperator& op,
                                   const PiecewiseSpectrum& f);

struct CanonicalDual {
  FamilyBranch branch;
  EvaluableSpectrum spec;  // branch spectrum / (lambda * G)
};

// Canonical duals phi_l / (lambda * G) and the associated dual-system data.
class CanonicalDualSystem {
 public:
  explicit CanonicalDualSystem(const GeneratorFamily& fam,
                               MultiplierOperator::Mode mode =
                                   MultiplierOperator::Mode::Frame);

  const MultiplierOperator& op() const { return op_; }
  const GeneratorFamily& family() const { return fam_; }

  EvaluableSpectrum dual(const FamilyBranch& br) const;
  // Applying the dual construction to the dual family lands back on the
  // original generator; computed as the algebraic round trip.
  EvaluableSpectrum dualOfDual(const FamilyBranch& br) const;

  // Exact dual bounds (1/beta, 1/alpha) from the primal bounds.
  FrameBounds dualBounds() const;

  // Density of the dual family, sum over branches |phi_l/(lambda G)|^2,
  // in closed form G / (lambda G)^2.
  double dualDensity(double g) const;

 private:
  GeneratorFamily fam_;
  MultiplierOperator op_;
};

// Duals of every branch across one period (periodic rules) or the family's
// support window (finite rules).
std::vector<CanonicalDual> canonicalDualGenerators(const GeneratorFamily& fam);

// Hermitian Gram matrix of the section atoms {T_{n q^(l)} phi_l} with
// |n| <= s and branches |l| <= t. Rows are ordered branch-major (shiftIndex
// ascending, then base index), with n = -s..s inside each branch; this fixed
// row-major (l, n) ordering keeps every downstream report reproducible.
struct GramMatrix {
  long s = 0;
  long t = 0;
  std::vector<FamilyBranch> branches;
  std::vector<cplx> data;  // row-major dim x dim

  size_t nCount() const { return static_cast<size_t>(2 * s + 1); }
  size_t dim() const { return branches.size() * nCount(); }
  size_t flatIndex(size_t branchPos, long n) const {
    return branchPos * nCount() + static_cast<size_t>(n + s);
  }
  const cplx& at(size_t r, size_t c) const { return data[r * dim() + c]; }
};

GramMatrix gramMatrix(const GeneratorFamily& fam, long s, long t);

struct EigenSummary {
  double minEig = 0.0;
  double maxEig = 0.0;
  long rank = 0;
  double cutoff = 0.0;  // 1e-12 * maxEig
};

EigenSummary gramEigenSummary(const GramMatrix& gram);

struct SectionCoefficients {
  long s = 0;
  long t = 0;
  std::vector<cplx> coeffs;    // Gram ordering; least-squares expansion of f
  std::vector<cplx> analysis;  // b_k = <f, atom_k>
  long rank = 0;
  double topEig = 0.0;
  double cutoff = 0.0;
};

// Least-squares coefficients of f in the section span: c solves the normal
// equations through the Gram pseudo-inverse with relative spectral cutoff
// 1e-12 * (largest eigenvalue). Rank deficiency is reported, never fatal.
SectionCoefficients finiteSectionCoefficients(const PiecewiseSpectrum& f,
                                              const GeneratorFamily& fam,
                                              long s, long t);

// c_k = <f, S^{-1} atom_k> through the multiplier form of S^{-1}: the weak
// limit the finite sections are compared against.
std::vector<cplx> multiplierOracleCoefficients(const PiecewiseSpectrum& f,
                                               const GeneratorFamily& fam,
                                               long s, long t);

struct SweepEntry {
  long s = 0;
  long t = 0;
  long j = 0;  // position in the generator enumeration of the report
  double normInv = 0.0;      // norm of the section inverse applied to phi_j
  double maxCoeffErr = 0.0;  // NaN when no test functions were supplied
  double cond = 0.0;         // top eigenvalue / smallest retained eigenvalue
};

struct SweepReport {
  std::vector<SweepEntry> rows;
  std::vector<long> generatorShiftIndices;  // j column decoding, branch order
  double observedSup = 0.0;
  // True when, for every generator, the sweep maximum stays within 5% of the
  // final section's value (the boundedness the section theory asks for).
  bool bounded = true;
};

// Sweeps strictly increasing sections, reporting the norm of the section
// inverse on each listed generator (jList entries are branch shift indices;
// every base at a listed index gets a row). The explicit-sections overload
// rejects non-monotone requests; the (maxS, maxT) convenience overload uses
// quarter steps. Test functions, when given, fill the maxCoeffErr column
// against the multiplier oracle.
SweepReport sectionInverseNormSweep(
    const GeneratorFamily& fam, const std::vector<long>& jList,
    const std::vector<std::pair<long, long>>& sections,
    const std::vector<PiecewiseSpectrum>& testFns = {});

SweepReport sectionInverseNormSweep(const GeneratorFamily& fam,
                                    const std::vector<long>& jList, long maxS,
                                    long maxT);

// Max over the section of |<atom, dual atom'> - delta| where the duals come
// from the full family's span multiplier; 0 exactly when the family is a
// Riesz basis of its span.
double biorthogonalityCheck(const GeneratorFamily& fam, long s, long t);

struct IndependenceResult {
  long rank = 0;
  long dim = 0;
  bool isIndependent = false;
  double cutoff = 0.0;
};

// Rank of the section Gram above the relative cutoff; independent iff full.
IndependenceResult independenceTest(const GeneratorFamily& fam, long s,
                                    long t);

// Builds the index-shift operators L^{1,0}: (n,l) -> (n+1,l) and
// L^{0,1}: (n,l) -> (n,l+1) on the section span by Gram solves, then checks
// || L^{m,k} atom(1,1) - atom(1+m,1+k) || over all in-section (m,k) >= 0.
// Dependent sections make L ill-posed and raise ill-posed-operator.
double shiftOperatorCheck(const GeneratorFamily& fam, long s, long t);

// || S^{-1} T_{n q} phi_l - T_{n q} S^{-1} phi_l || / ||phi_l||, the two
// sides composed through different evaluation paths; analytically zero.
double dualCommutationCheck(const GeneratorFamily& fam, long n, long l);

}  // namespace framelet
