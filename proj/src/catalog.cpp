#include "rk/catalog.hpp"

#include "rk/catalog_data.hpp"

#include "json.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

namespace rk {

namespace {

using nlohmann::json;

std::vector<std::string> str_list(const json& j) {
  std::vector<std::string> out;
  for (const auto& item : j) out.push_back(item.get<std::string>());
  return out;
}

CatalogSource parse_source(const std::string& s) {
  if (s == "v2_table") return CatalogSource::V2Table;
  if (s == "h3_table") return CatalogSource::H3Table;
  if (s == "example") return CatalogSource::Example;
  if (s == "degraaf") return CatalogSource::DeGraaf;
  throw std::logic_error("catalog: unknown source tag '" + s + "'");
}

V2Expectation parse_v2(const json& j) {
  V2Expectation e;
  e.origin = j.at("origin").get<std::string>();
  e.verdict = j.at("verdict").get<std::string>();
  if (j.contains("V")) e.V = str_list(j.at("V"));
  if (j.contains("Vg")) e.Vg = str_list(j.at("Vg"));
  if (j.contains("certificate")) e.certificate = j.at("certificate").get<std::string>();
  return e;
}

H3Expectation parse_h3(const json& j) {
  H3Expectation e;
  e.origin = j.at("origin").get<std::string>();
  e.H = str_list(j.at("H"));
  e.V = str_list(j.at("V"));
  e.Hbar_type = j.at("Hbar_type").get<std::string>();
  e.V_type = j.at("V_type").get<std::string>();
  return e;
}

TmainExpectation parse_tmain(const json& j) {
  TmainExpectation e;
  e.origin = j.at("origin").get<std::string>();
  e.all_true = j.at("all_true").get<bool>();
  if (j.contains("named_failure")) e.named_failure = j.at("named_failure").get<std::string>();
  return e;
}

WitnessExpectation parse_witness(const json& j) {
  WitnessExpectation w;
  w.tag = j.at("tag").get<std::string>();
  w.H = str_list(j.at("H"));
  w.V = str_list(j.at("V"));
  w.mutual = j.at("mutual").get<bool>();
  if (j.contains("induced_V_abelian")) w.induced_V_abelian = j.at("induced_V_abelian").get<bool>();
  return w;
}

CatalogFacts parse_facts(const json& j) {
  CatalogFacts f;
  if (j.contains("dim_derived")) f.dim_derived = j.at("dim_derived").get<int>();
  if (j.contains("unimodular")) f.unimodular = j.at("unimodular").get<bool>();
  if (j.contains("filiform")) f.filiform = j.at("filiform").get<bool>();
  if (j.contains("trace_ad")) {
    TraceAdFact t;
    t.vector_expr = j.at("trace_ad").at("vector").get<std::string>();
    auto parsed = parse_scalar(j.at("trace_ad").at("trace").get<std::string>());
    if (!parsed) throw std::logic_error("catalog: bad trace value");
    t.trace = *parsed;
    f.trace_ad = std::move(t);
  }
  return f;
}

struct Registry {
  std::vector<std::string> names;
  std::map<std::string, CatalogEntry> entries;
  std::map<std::string, LieAlgebra> algebras;
  std::map<std::string, std::string> file_texts;  // keyed by entry name
};

Registry build_registry() {
  Registry reg;

  std::map<std::string, std::string> by_file;
  for (std::size_t i = 0; i < detail::kCatalogFileCount; ++i)
    by_file.emplace(detail::kCatalogFiles[i].name, detail::kCatalogFiles[i].text);

  const json root = json::parse(detail::kExpectationsJson);
  std::map<std::string, int> file_uses;
  for (const auto& [name, body] : root.items()) {
    CatalogEntry entry;
    entry.name = name;
    entry.file = body.at("file").get<std::string>();
    entry.source = parse_source(body.at("source").get<std::string>());
    if (body.contains("note")) entry.note = body.at("note").get<std::string>();
    if (body.contains("mutual_search")) entry.mutual_search = body.at("mutual_search").get<bool>();
    if (body.contains("v2")) entry.v2 = parse_v2(body.at("v2"));
    if (body.contains("h3")) entry.h3 = parse_h3(body.at("h3"));
    if (body.contains("tmain")) entry.tmain = parse_tmain(body.at("tmain"));
    if (body.contains("witnesses"))
      for (const auto& w : body.at("witnesses")) entry.witnesses.push_back(parse_witness(w));
    if (body.contains("facts")) entry.facts = parse_facts(body.at("facts"));

    auto file_it = by_file.find(entry.file);
    if (file_it == by_file.end())
      throw std::logic_error("catalog: entry '" + name + "' references missing file " + entry.file);
    ++file_uses[entry.file];

    ParseResult parsed = parse_algebra(file_it->second);
    if (!parsed.ok())
      throw std::logic_error("catalog: " + entry.file + " does not parse: " + parsed.error->message);
    if (parsed.algebra->name() != name)
      throw std::logic_error("catalog: " + entry.file + " declares name '" + parsed.algebra->name() +
                             "' but is registered as '" + name + "'");

    reg.names.push_back(name);
    reg.file_texts.emplace(name, file_it->second);
    reg.algebras.emplace(name, std::move(*parsed.algebra));
    reg.entries.emplace(name, std::move(entry));
  }

  for (const auto& [file, text] : by_file) {
    (void)text;
    auto it = file_uses.find(file);
    if (it == file_uses.end() || it->second != 1)
      throw std::logic_error("catalog: data file " + file + " is not referenced by exactly one entry");
  }

  // json object iteration is already key-sorted; keep the invariant explicit.
  std::sort(reg.names.begin(), reg.names.end());
  return reg;
}

const Registry& registry() {
  static const Registry reg = build_registry();
  return reg;
}

[[noreturn]] void unknown(const std::string& name) {
  throw std::out_of_range("unknown catalog entry '" + name + "'");
}

}  // namespace

std::string to_string(CatalogSource source) {
  switch (source) {
    case CatalogSource::V2Table: return "v2_table";
    case CatalogSource::H3Table: return "h3_table";
    case CatalogSource::Example: return "example";
    case CatalogSource::DeGraaf: return "degraaf";
  }
  return "unknown";
}

const std::vector<std::string>& catalog_names() { return registry().names; }

bool catalog_has(const std::string& name) { return registry().entries.count(name) != 0; }

const LieAlgebra& catalog_load(const std::string& name) {
  const auto& algebras = registry().algebras;
  auto it = algebras.find(name);
  if (it == algebras.end()) unknown(name);
  return it->second;
}

const CatalogEntry& catalog_expected(const std::string& name) {
  const auto& entries = registry().entries;
  auto it = entries.find(name);
  if (it == entries.end()) unknown(name);
  return it->second;
}

const std::string& catalog_file_text(const std::string& name) {
  const auto& texts = registry().file_texts;
  auto it = texts.find(name);
  if (it == texts.end()) unknown(name);
  return it->second;
}

std::vector<std::string> catalog_names_with(CatalogSource source) {
  std::vector<std::string> out;
  for (const auto& name : registry().names)
    if (registry().entries.at(name).source == source) out.push_back(name);
  return out;
}

Subspace catalog_span(const LieAlgebra& g, const std::vector<std::string>& exprs) {
  std::vector<Vec> rows;
  for (const auto& expr : exprs) {
    std::optional<Vec> v = parse_vector_expr(g, expr);
    if (!v) throw std::invalid_argument("catalog: bad vector expression '" + expr + "'");
    rows.push_back(std::move(*v));
  }
  return Subspace::span(rows, g.dim());
}

}  // namespace rk
