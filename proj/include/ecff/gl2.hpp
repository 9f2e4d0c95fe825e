#pragma once

// Brute-force group theory of GL_2(Z/ell) for small primes ell.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

namespace ecff {

/// 2x2 matrix [[a, b], [c, d]] with entries in [0, ell).
struct Mat2 {
    std::uint32_t a, b, c, d;

    friend bool operator==(const Mat2&, const Mat2&) = default;
};

Mat2 mat_mul(const Mat2& x, const Mat2& y, std::uint32_t ell);
std::uint32_t mat_det(const Mat2& m, std::uint32_t ell);
std::uint32_t mat_trace(const Mat2& m, std::uint32_t ell);
Mat2 mat_inv(const Mat2& m, std::uint32_t ell);
/// a + ell b + ell^2 c + ell^3 d.
std::uint32_t mat_index(const Mat2& m, std::uint32_t ell);
Mat2 mat_from_index(std::uint32_t i, std::uint32_t ell);

struct ConjClass {
    int id;
    Mat2 rep;
    std::uint64_t size;
    std::uint32_t trace;
    std::uint32_t det;
    bool scalar;
};

class ClassTable {
public:
    static constexpr std::uint32_t kMaxEll = 13;

    std::uint32_t ell() const { return ell_; }
    const std::vector<ConjClass>& classes() const { return classes_; }
    const ConjClass& operator[](int id) const { return classes_[static_cast<std::size_t>(id)]; }
    /// Class id of an invertible matrix.
    int class_of(const Mat2& m) const { return class_of_[mat_index(m, ell_)]; }
    /// Class with this (trace, det, scalar) key, if any.
    std::optional<int> lookup(std::uint32_t trace, std::uint32_t det, bool scalar) const;
    std::uint64_t group_order() const;     // #GL_2(Z/ell)
    std::uint64_t sl2_order() const;       // ell (ell + 1)(ell - 1)

    explicit ClassTable(std::uint32_t ell);

private:
    std::uint32_t ell_;
    std::vector<ConjClass> classes_;
    std::vector<int> class_of_;
    std::map<std::tuple<std::uint32_t, std::uint32_t, bool>, int> index_;
};

/// Conjugacy classes by orbit enumeration; throws InvalidArgument for ell
/// not prime or above kMaxEll. Cached per ell.
const ClassTable& class_table(std::uint32_t ell);

/// Ids of the determinant-1 classes.
std::vector<int> det1_classes(const ClassTable& t);

struct GammaEll {
    std::uint32_t ell;
    std::uint32_t q_mod_ell;
    std::vector<std::uint32_t> det_subgroup;   // <q mod ell>, sorted
    std::vector<int> member_classes;
    std::uint64_t order;                       // #SL_2 * #det_subgroup
};

/// Gamma_ell: matrices whose determinant lies in <q mod ell>. Throws
/// InvalidArgument when ell divides q.
GammaEll gamma_ell(std::uint32_t ell, std::uint64_t q);

/// Frobenius class from (trace, det). When trace^2 - 4 det = 0 the scalar
/// flag must be supplied (AmbiguousClass otherwise); it is ignored when the
/// discriminant is nonzero.
int frobenius_class(const ClassTable& t, std::int64_t trace, std::int64_t det, std::optional<bool> scalar);

/// Repeated eigenvalue u of x^2 - trace x + det when the discriminant
/// vanishes mod ell.
std::uint32_t repeated_eigenvalue(std::uint32_t ell, std::int64_t trace);

struct SurjectivityVerdict {
    bool certified;
    std::vector<int> missing;    // unmet det-1 classes
    bool dets_generate;          // observed determinants generate <q mod ell>
};

/// Certified iff every det-1 class was observed and the observed
/// determinants generate <q mod ell>.
SurjectivityVerdict surjectivity_criterion(std::uint32_t ell, std::uint64_t q, const std::set<int>& observed,
                                           const std::set<std::uint32_t>& observed_dets);

/// The uniformity constant c(g) = 2 + max{ell prime : (ell - (6 + 3 e4 + 4 e3))/12 <= g}.
std::uint64_t c_of_g(std::uint64_t g);

struct HypothesisResult {
    bool pass;
    std::optional<std::uint64_t> witness;   // first ell with p | ell - 1 or p | ell + 1
};

/// Scans primes ell != p below c(g).
HypothesisResult hypothesis_check(std::uint64_t p, std::uint64_t g);

/// Closure of a generating set under multiplication (brute force, for tests
/// and the soundness check).
std::vector<std::uint32_t> generated_subgroup(const std::vector<Mat2>& gens, std::uint32_t ell);

} // namespace ecff
