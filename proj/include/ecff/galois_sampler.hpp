#pragma once

// Frobenius data of curves over K = F_q(T) at good primes, and what it
// certifies about the mod-ell images.

#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "ecff/function_field.hpp"
#include "ecff/gl2.hpp"

namespace ecff {

struct GlobalCurve {
    PolyOverFq a;
    PolyOverFq b;
    PolyOverFq disc;    // -16(4a^3 + 27b^2), nonzero
    PolyOverFq hasse;   // Hasse invariant in F_q[T]

    /// Throws SingularCurve when the discriminant vanishes.
    static GlobalCurve make(PolyOverFq a, PolyOverFq b);
};

struct FrobRecord {
    std::size_t prime_index;   // into prime_list(base, D)
    unsigned degree;
    const Field* residue;      // F_{q^degree}
    Elem a;                    // reductions mod P
    Elem b;
    std::uint64_t N;
    std::int64_t trace;
    bool good;                 // always true: bad primes are skipped
    bool ordinary;             // trace != 0 mod p
};

/// Visit the good primes of degree <= D in prime_list order; the visitor
/// returns false to stop early.
void for_each_frobenius(const GlobalCurve& E, unsigned D, const std::function<bool(const FrobRecord&)>& visit);

/// One record per good prime of degree <= D.
std::vector<FrobRecord> frobenius_scan(const GlobalCurve& E, unsigned D);

struct EllImage {
    std::uint32_t ell;
    bool certified;                  // image is all of Gamma_ell (sound)
    std::vector<int> missing;        // det-1 classes not yet observed
    bool dets_generate;
    std::set<int> observed;
    std::set<std::uint32_t> dets;
    unsigned max_degree;             // largest prime degree scanned
};

/// Maps records to Frobenius classes of GL_2(Z/ell) (scalar ambiguity
/// resolved with torsion_rank) and applies the surjectivity criterion.
/// Only records with degree <= max_degree are used (0 = all).
EllImage classify_image_ell(const std::vector<FrobRecord>& records, std::uint32_t ell, std::uint64_t q,
                            unsigned max_degree = 0);

/// Class of one record in GL_2(Z/ell).
int frobenius_class_of(const FrobRecord& r, std::uint32_t ell, std::uint64_t q);

struct PImage {
    enum class Status { supersingular, certified, candidate };

    Status status;
    std::vector<std::uint32_t> subgroup;   // generated by ordinary traces mod p
};

/**
 * Incremental form of classify_image_ell / classify_image_p for a stream of
 * records in prime_list order. Since certification is monotone, a scan can
 * stop once all_certified() holds, and certified_at() tells which depth
 * first sufficed.
 */
class ImageTracker {
public:
    /// `ells` may include p, which is tracked through the ordinary traces.
    ImageTracker(const GlobalCurve& E, std::vector<std::uint32_t> ells);

    void add(const FrobRecord& r);
    std::size_t size() const { return ells_.size(); }
    std::uint32_t ell(std::size_t i) const { return ells_[i]; }
    bool certified(std::size_t i) const { return certified_at_[i] != 0; }
    /// Degree of the record that completed the certificate, 0 if none yet.
    unsigned certified_at(std::size_t i) const { return certified_at_[i]; }
    bool all_certified() const;

private:
    std::uint64_t q_;
    std::uint32_t p_;
    bool supersingular_;
    std::vector<std::uint32_t> ells_;
    std::vector<std::set<int>> observed_;
    std::vector<std::set<std::uint32_t>> dets_;
    std::vector<unsigned> certified_at_;
    std::vector<char> units_;   // mod-p subgroup membership
    std::size_t units_size_ = 1;
};

PImage classify_image_p(const GlobalCurve& E, const std::vector<FrobRecord>& records, unsigned max_degree = 0);

/// Exact mod-2 image as a subgroup of GL_2(F_2) = S_3 (up to conjugacy).
enum class Mod2Image { trivial, order2, cyclic3, full };

Mod2Image exact_mod2(const GlobalCurve& E);

/// Whether an image of this type meets the GL_2(F_2) class with the given
/// trace and scalar flag (identity: trace 0 scalar; involutions: trace 0
/// non-scalar; 3-cycles: trace 1).
bool mod2_image_meets(Mod2Image img, std::uint32_t trace, bool scalar);

/// Roots of X^3 + aX + b in F_q[T], by evaluation at the points of F_q and
/// interpolation of candidate root tuples, each confirmed exactly.
std::vector<PolyOverFq> cubic_roots(const PolyOverFq& a, const PolyOverFq& b);

/// Exact square test in F_q[T].
bool is_square_poly(const PolyOverFq& f);

/// Prime-to-p part of gcd of N over the records; throws InvalidArgument on
/// an empty list.
std::uint64_t torsion_bound(const std::vector<FrobRecord>& records);

struct TorsionScan {
    std::uint64_t bound;
    std::size_t records_used;
    bool stopped_early;
};

/// torsion_bound over frobenius_scan(E, D), stopping once the running gcd
/// equals the order of the rational 2-torsion: that subgroup divides the
/// true torsion, which divides every later gcd, so the result is unchanged.
TorsionScan torsion_scan(const GlobalCurve& E, unsigned D);

struct ImageReport {
    std::vector<EllImage> ell;
    PImage p;
    std::uint64_t torsion_bound;
};

ImageReport image_report(const GlobalCurve& E, const std::vector<FrobRecord>& records,
                         const std::vector<std::uint32_t>& ells);

/// Smallest D such that q^d, d <= D, realizes every element of <q mod ell>
/// for each ell in the list (ell = p ignored).
unsigned default_scan_depth(std::uint64_t q, const std::vector<std::uint32_t>& ells);

} // namespace ecff
