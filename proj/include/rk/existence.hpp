#pragma once

// Decision and construction engine for open respectful decompositions:
// the dim-V-2 condition triple and its constructive complement, bounded
// witness searches, and the three replayable exclusion certificates
// (derived dimension, codimension-1 abelian ideal, radical pencil).

#include "rk/decomp.hpp"
#include "rk/exactlin.hpp"
#include "rk/liealg.hpp"
#include "rk/sympoly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rk {

// ---------------------------------------------------------------------------
// dim V = 2: conditions and constructive H

struct V2Conditions {
  bool c1 = false;  // [V,V] != 0
  bool c2 = false;  // V intersect [V,g] = 0
  bool c3 = false;  // [V,g] != [g,g]
  bool all() const { return c1 && c2 && c3; }
};

// Throws std::invalid_argument unless g is nilpotent and dim V = 2.
V2Conditions v2_conditions(const LieAlgebra& g, const Subspace& V);

// Deterministic complement H with [V,g] inside H and [g,g] not inside H;
// the pair (H,V) is re-verified open respectful before returning. Selection
// rule: start from [V,g]; extend by standard basis vectors in index order,
// keeping independence from V; if the greedy result swallows [g,g], repair
// by adding c*e_w (w = 0..n-1, c in {1,-1,2,-2}) to one greedy generator,
// scanned last-added first. Throws std::invalid_argument unless
// v2_conditions all hold, std::logic_error if no valid repair exists.
Subspace construct_H_from_V(const LieAlgebra& g, const Subspace& V);

// If [g,g] is non-abelian and dim[g,g] - dim[g,[g,g]] >= 2, searches for
// V = span(v1,v2) inside [g,g] with v1, v2 independent modulo [g,[g,g]]
// and [v1,v2] != 0 (deterministic scan of canonical-basis combinations
// with coefficient height <= 2), returning it only when v2_conditions all
// hold. Returns nullopt when the hypotheses fail or the bounded scan
// finds nothing. Never throws.
std::optional<Subspace> derna_witness(const LieAlgebra& g);

// ---------------------------------------------------------------------------
// codimension-1 abelian ideals

struct HyperplaneDecision {
  bool yes = false;
  // YES: phi in ambient dual coordinates; ker phi is an abelian hyperplane
  // ideal (it contains [g,g], so it is automatically an ideal).
  Vec functional;
  // NO evidence: either one dual-basis form of rank >= 4 (psi in the dual
  // coordinates of [g,g]), or the empty intersection of the annihilators
  // of the rank-2 form radicals with Ann([g,g]).
  std::optional<Vec> rank_witness_psi;
  int rank_witness_rank = 0;
  bool empty_intersection = false;
};

// Complete decision. Throws std::invalid_argument when [g,g] = g.
HyperplaneDecision abelian_hyperplane(const LieAlgebra& g);

// Replay helper: ker phi contains [g,g] and is abelian.
bool hyperplane_is_abelian_ideal(const LieAlgebra& g, const Vec& phi);

// ---------------------------------------------------------------------------
// radical pencil analysis

// Antisymmetric matrix M(psi) with entries psi([x_i, x_j]), where the
// variables are the dual coordinates of the canonical basis of [g,g].
SymMatrix pencil_matrix(const LieAlgebra& g);

struct PencilSubstitution {
  int var = -1;
  Poly value;
  std::string reason;
};

// One stratum of parameter space on which the radical of the pencil was
// computed in closed form: apply `substitutions` to the root pencil, assume
// every polynomial in `pivots` nonzero; then the pencil has the stated rank
// and `radical` spans its kernel identically.
struct PencilStratum {
  std::vector<PencilSubstitution> substitutions;
  std::vector<Poly> pivots;
  int rank = 0;
  std::vector<std::vector<Poly>> radical;
  std::vector<Scalar> sample;  // assignment to every parameter variable
};

// A pivot whose real zero locus is exactly "all occurring variables zero",
// certified by definiteness; the zero locus is covered by a recursion.
struct DefiniteLocus {
  std::vector<PencilSubstitution> substitutions;
  Poly pivot;
  Definiteness definiteness = Definiteness::INDEFINITE_OR_SEMI;
};

// A substitution path that forces psi = 0, excluded projectively.
struct ExcludedBranch {
  std::vector<PencilSubstitution> substitutions;
};

struct PencilCertificate {
  std::vector<std::string> vars;
  std::vector<PencilStratum> strata;
  std::vector<DefiniteLocus> definite_loci;
  std::vector<ExcludedBranch> excluded;
};

struct PencilWitness {
  Vec psi;      // rational parameter point, coordinates of [g,g]*
  Vec v1, v2;   // in the radical of the evaluated pencil, [v1,v2] != 0
};

enum class PencilStatus { OBSTRUCTED, NOT_OBSTRUCTED, UNKNOWN };
std::string to_string(PencilStatus s);

struct PencilResult {
  PencilStatus status = PencilStatus::UNKNOWN;
  std::optional<PencilCertificate> certificate;  // OBSTRUCTED
  std::optional<PencilWitness> witness;          // NOT_OBSTRUCTED
};

// Symbolic stratification of the radical of M(psi) over real psi != 0.
// OBSTRUCTED means: on every stratum the radical is abelian identically,
// so no two-dimensional non-abelian V fits inside any radical. Throws
// std::invalid_argument unless g is nilpotent with dim[g,g] >= 1.
PencilResult pencil_obstruction(const LieAlgebra& g);

// Independent replay of an OBSTRUCTED certificate: rebuilds the pencil,
// re-applies each stratum's substitutions, and re-checks the kernel
// identities, the bracket-vanishing identities, the rank at the recorded
// sample, the definiteness of each covered pivot locus, and the projective
// emptiness of each excluded branch. On failure returns false and, when
// `why` is non-null, stores a description.
bool verify_pencil_certificate(const LieAlgebra& g, const PencilCertificate& c,
                               std::string* why = nullptr);

// ---------------------------------------------------------------------------
// verdicts and certificates

enum class VerdictStatus { EXISTS, NOT_EXISTS, UNKNOWN };
std::string to_string(VerdictStatus s);

enum class CertificateKind {
  DERIVED_DIM_LE_1,
  CODIM1_ABELIAN_IDEAL,
  PENCIL_ALL_RADICALS_ABELIAN,
  TMAIN_CONDITION_FAIL,
};
std::string to_string(CertificateKind k);

struct Certificate {
  CertificateKind kind = CertificateKind::DERIVED_DIM_LE_1;
  int derived_dim = -1;                     // DERIVED_DIM_LE_1
  Vec functional;                           // CODIM1_ABELIAN_IDEAL
  std::optional<PencilCertificate> pencil;  // PENCIL_ALL_RADICALS_ABELIAN
  char tmain_which = 0;                     // TMAIN_CONDITION_FAIL: 'a'..'d'
};

// Replays a certificate against g using exact linear algebra and symbolic
// polynomials only; independent of how the certificate was produced.
bool verify_certificate(const LieAlgebra& g, const Certificate& c,
                        std::string* why = nullptr);

struct Verdict {
  VerdictStatus status = VerdictStatus::UNKNOWN;
  std::optional<Decomposition> witness;      // EXISTS
  std::optional<Certificate> certificate;    // NOT_EXISTS
  long trials = 0;                           // search effort spent
};

// Decides existence of an open respectful decomposition with dim V = 2:
// structured candidate scan (non-central spans first, then all spans),
// then the obstruction ladder (derived dimension, abelian hyperplane,
// pencil), then a seeded randomized scan, then UNKNOWN. EXISTS always
// carries a re-verified witness; NOT_EXISTS always carries a replayable
// certificate; the two are mutually exclusive by construction. Throws
// std::invalid_argument unless g is nilpotent.
Verdict v2_decide(const LieAlgebra& g, long budget = 100000);

// ---------------------------------------------------------------------------
// dimension-six condition screen

struct TmainConditions {
  bool a = false;  // no codimension-1 abelian ideal
  bool b = false;  // dim Z(g) <= 2
  bool c = false;  // dim([g,g] + Z(g)) <= 3
  bool d = false;  // dim Z = 1 and dim[g,g] = 3 force [g,[g,[g,g]]] != 0
  bool all() const { return a && b && c && d; }
  std::optional<char> first_failure() const;
};

// Throws std::invalid_argument unless g is nilpotent of dimension 6.
TmainConditions tmain_conditions(const LieAlgebra& g);

// ---------------------------------------------------------------------------
// general witness search

struct SearchOptions {
  bool mutual = false;        // additionally require [H,V] = 0
  bool v_subalgebra = false;  // require V closed; drops the openness demand
  long budget = 100000;       // randomized candidates after the structured pass
  std::optional<unsigned long long> seed;  // overrides RESPECT_KIT_SEED
};

struct SearchResult {
  std::optional<Decomposition> witness;
  long trials = 0;
};

// Deterministic structured enumeration (coordinate splits, one generator
// perturbed by c*e_j with c in {-2,-1,1,2} on either or both sides),
// followed by seeded randomized candidates with small integer entries.
// Every returned decomposition is exactly re-verified: respectful, open
// unless v_subalgebra is set, and mutual / V-closed when requested.
// A nullopt result carries only the trial count, not a proof.
// Throws std::invalid_argument unless dim_h + dim_v = dim g with both >= 0.
SearchResult witness_search(const LieAlgebra& g, int dim_h, int dim_v,
                            const SearchOptions& options = {});

// Seed actually used by randomized passes: options.seed if set, otherwise
// the RESPECT_KIT_SEED environment variable, otherwise a fixed default.
unsigned long long search_seed(const std::optional<unsigned long long>& s);

}  // namespace rk
