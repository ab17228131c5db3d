#pragma once

// Curated registry of the algebras the toolkit classifies, together with the
// machine-readable expectations the verification suite replays against them:
// stated witness subspaces, decision verdicts with their certificate kinds,
// structure types of derived subalgebras, and assorted per-entry facts.
//
// Entries are keyed by name ("L6_10", "L5_4+R", "h3+h3", "Ex3.6", ...). The
// presentations live in data/catalog/*.alg and are embedded into the library
// at build time; expectations come from data/catalog/expectations.json.

#include "rk/algfile.hpp"
#include "rk/exactlin.hpp"
#include "rk/liealg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rk {

enum class CatalogSource {
  V2Table,    // row of the dim V = 2 classification table
  H3Table,    // row of the dim H = 3 classification table
  Example,    // worked example shipped with the toolkit
  DeGraaf,    // transcribed from the de Graaf classification
};

std::string to_string(CatalogSource source);

// Expectations for the dim V = 2 decision. `origin` records whether the data
// is stated by the source classification ("stated") or established by an
// independent derivation ("derived").
struct V2Expectation {
  std::string origin;
  std::string verdict;          // "EXISTS" or "NOT_EXISTS"
  std::vector<std::string> V;   // stated witness V basis expressions
  std::vector<std::string> Vg;  // stated [V,g] basis expressions
  std::string certificate;      // expected obstruction kind when NOT_EXISTS
};

// Expectations for a dim H = 3 table row: the stated witness and the type
// labels of Hbar = H + V_H and of the induced algebra on V.
struct H3Expectation {
  std::string origin;
  std::vector<std::string> H;
  std::vector<std::string> V;
  std::string Hbar_type;  // e.g. "h3+R", "f4"
  std::string V_type;     // e.g. "R3", "h3"
};

struct TmainExpectation {
  std::string origin;
  bool all_true = false;
  std::string named_failure;  // one of "a".."d" when all_true is false
};

// A stated decomposition witness outside the table columns (worked examples).
struct WitnessExpectation {
  std::string tag;  // "main", or "a"/"b" when an entry carries several
  std::vector<std::string> H;
  std::vector<std::string> V;
  bool mutual = false;
  std::optional<bool> induced_V_abelian;
};

struct TraceAdFact {
  std::string vector_expr;  // vector whose adjoint trace is recorded
  Scalar trace;
};

struct CatalogFacts {
  std::optional<int> dim_derived;
  std::optional<bool> unimodular;
  std::optional<bool> filiform;
  std::optional<TraceAdFact> trace_ad;
};

struct CatalogEntry {
  std::string name;
  std::string file;  // base name of the presentation file
  CatalogSource source = CatalogSource::DeGraaf;
  std::string note;
  bool mutual_search = false;  // a mutual decomposition should be findable
  std::optional<V2Expectation> v2;
  std::optional<H3Expectation> h3;
  std::optional<TmainExpectation> tmain;
  std::vector<WitnessExpectation> witnesses;
  CatalogFacts facts;
};

// All entry names, sorted. The registry is immutable after first use.
const std::vector<std::string>& catalog_names();

bool catalog_has(const std::string& name);

// Validated presentation of a registered entry.
// Throws std::out_of_range for unknown names.
const LieAlgebra& catalog_load(const std::string& name);

// Expectations record of a registered entry.
// Throws std::out_of_range for unknown names.
const CatalogEntry& catalog_expected(const std::string& name);

// Exact text of the entry's presentation file as embedded at build time.
const std::string& catalog_file_text(const std::string& name);

std::vector<std::string> catalog_names_with(CatalogSource source);

// Parses expectation basis expressions (e.g. {"x2+x3", "x4"}) into a
// subspace of g. Throws std::invalid_argument on a malformed expression.
Subspace catalog_span(const LieAlgebra& g, const std::vector<std::string>& exprs);

}  // namespace rk
