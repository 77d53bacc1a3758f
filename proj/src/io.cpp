#include "lforge/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "lforge/errors.hpp"
#include "lforge/polynomial_io.hpp"

namespace lforge {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kStructureFormat = "lforge-structure/1";
constexpr const char* kTowerFormat = "lforge-tower/1";

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    std::string msg = e.what();
    if (auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
    throw ParseError(msg, line, col);
  }
}

std::string strip_position(const std::string& what) {
  auto pos = what.rfind(" (line ");
  return pos == std::string::npos ? what : what.substr(0, pos);
}

// Parses a polynomial payload; errors point into the file when the string
// occurs there verbatim.
struct Reader {
  std::string_view text;

  std::vector<Term> terms(const Presentation& p, const std::string& payload, const std::string& where, long cap = 0) const {
    try {
      return parse_polynomial_terms(p, payload, cap);
    } catch (const ParseError& e) {
      const std::string quoted = Json(payload).dump();
      auto off = text.find(quoted);
      if (off != std::string_view::npos && e.line() == 1) {
        auto [line, col] = line_column(text, off + 1);
        throw ParseError(where + ": " + strip_position(e.what()), line, col + e.column() - 1);
      }
      throw ParseError(where + ": " + strip_position(e.what()), e.line(), e.column());
    } catch (const InputError& e) {
      throw InputError(where + ": " + e.what());
    }
  }

  TruncatedSeries series(const PresentationPtr& p, const std::string& payload, const std::string& where) const {
    return TruncatedSeries::from_terms(p, terms(*p, payload, where, p->truncation()));
  }
};

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

const Json& need(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) bad(where, std::string("missing key \"") + key + "\"");
  return obj.at(key);
}

int get_int(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) bad(where, "expected an integer");
  return v.get<int>();
}

std::string get_string(const Json& v, const std::string& where) {
  if (!v.is_string()) bad(where, "expected a string");
  return v.get<std::string>();
}

const Json& get_array(const Json& v, const std::string& where) {
  if (!v.is_array()) bad(where, "expected an array");
  return v;
}

void check_format(const Json& doc, const char* expected) {
  const auto f = get_string(need(doc, "format", "file"), "format");
  if (f != expected) bad("format", "expected \"" + std::string(expected) + "\", found \"" + f + "\"");
}

std::vector<std::string> image_strings(const FilteredMap& m) {
  std::vector<std::string> out;
  for (const auto& img : m.images()) out.push_back(format_series(img));
  return out;
}

// Dump with scalar arrays kept on one line.
void dump(const Json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  const std::string inner(static_cast<std::size_t>(indent) + 2, ' ');
  if (j.is_object()) {
    const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
    if (j.empty() || (flat && j.size() <= 4)) {
      out += "{";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        out += (first ? "" : ", ") + Json(k).dump() + ": " + v.dump();
        first = false;
      }
      out += "}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (const auto& [k, v] : j.items()) {
      if (!first) out += ",\n";
      first = false;
      out += inner + Json(k).dump() + ": ";
      dump(v, indent + 2, out);
    }
    out += "\n" + pad + "}";
  } else if (j.is_array()) {
    const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
    if (j.empty() || flat) {
      out += "[";
      for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + j[i].dump();
      out += "]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += inner;
      dump(j[i], indent + 2, out);
      out += (i + 1 < j.size()) ? ",\n" : "\n";
    }
    out += pad + "]";
  } else {
    out += j.dump();
  }
}

std::string dump_document(const Json& j) {
  std::string out;
  dump(j, 0, out);
  out += '\n';
  return out;
}

Grading parse_grading(const Json& doc) {
  if (!doc.contains("grading")) return Grading::Filtered;
  const auto g = get_string(doc.at("grading"), "grading");
  if (g == "filtered") return Grading::Filtered;
  if (g == "graded") return Grading::Graded;
  bad("grading", "expected \"filtered\" or \"graded\", found \"" + g + "\"");
}

KOModelStructure parse_ko(const Json& ko, const Reader& rd) {
  const std::string name = ko.contains("generator") ? get_string(ko.at("generator"), "ko/generator") : "x";
  const int trunc = ko.contains("truncation") ? get_int(ko.at("truncation"), "ko/truncation") : 12;
  auto p = KOModelStructure::default_presentation(trunc, name);
  return KOModelStructure::make(rd.series(p, get_string(need(ko, "psi2_xi_x", "ko"), "ko/psi2_xi_x"), "ko/psi2_xi_x"));
}

}  // namespace

bool StructureFile::has_k_model_shape() const {
  return presentation && adams && !graded && presentation->ring().kind() == RingKind::Integers &&
         presentation->generator_count() == 1 && presentation->is_free() &&
         presentation->generators()[0].filtration == 4;
}

KModelStructure StructureFile::k_model() const {
  if (!has_k_model_shape())
    throw MalformedStructure("not a K model: needs ring Z, one free generator of filtration 4 and an adams table");
  std::vector<int> listed;
  for (int p : primes)
    if (adams->has(p)) listed.push_back(p);
  if (listed.empty()) throw MalformedStructure("adams table has none of the listed primes");
  return KModelStructure::make(*adams, listed);
}

FileKind detect_file_kind(std::string_view text) {
  const Json doc = parse_json(text);
  const auto f = get_string(need(doc, "format", "file"), "format");
  if (f == kStructureFormat) return FileKind::Structure;
  if (f == kTowerFormat) return FileKind::Tower;
  bad("format", "unknown format \"" + f + "\"");
}

StructureFile parse_structure(std::string_view text) {
  const Json doc = parse_json(text);
  check_format(doc, kStructureFormat);
  const Reader rd{text};
  StructureFile out;

  if (doc.contains("primes")) {
    out.primes.clear();
    for (const auto& v : get_array(doc.at("primes"), "primes")) {
      const int p = get_int(v, "primes");
      if (p < 2 || !is_prime(static_cast<unsigned long>(p))) bad("primes", std::to_string(p) + " is not a prime");
      out.primes.push_back(p);
    }
    std::sort(out.primes.begin(), out.primes.end());
    out.primes.erase(std::unique(out.primes.begin(), out.primes.end()), out.primes.end());
  }
  if (doc.contains("exponent_bound")) {
    out.exponent_bound = get_int(doc.at("exponent_bound"), "exponent_bound");
    if (out.exponent_bound < 1) bad("exponent_bound", "must be positive");
  }

  if (doc.contains("generators")) {
    const auto ring = CoefficientRing::parse(get_string(need(doc, "ring", "file"), "ring"));
    const Grading grading = parse_grading(doc);
    std::vector<std::string> rel_text;
    if (doc.contains("relations"))
      for (const auto& r : get_array(doc.at("relations"), "relations")) rel_text.push_back(get_string(r, "relations"));

    if (grading == Grading::Graded) {
      std::vector<std::pair<std::string, int>> gens;
      for (const auto& g : get_array(doc.at("generators"), "generators"))
        gens.emplace_back(get_string(need(g, "name", "generators"), "generators/name"),
                          get_int(need(g, "degree", "generators"), "generators/degree"));
      std::optional<int> n_override;
      if (doc.contains("n_override")) n_override = get_int(doc.at("n_override"), "n_override");
      // Surface polynomial errors with file positions before construction.
      std::vector<Generator> plain;
      for (const auto& [n, d] : gens) plain.push_back({n, d, d});
      auto scratch = Presentation::make(ring, plain, {}, 1, Grading::Graded);
      for (std::size_t i = 0; i < rel_text.size(); ++i)
        (void)rd.terms(*scratch, rel_text[i], "relations/" + std::to_string(i));
      out.graded.emplace(ring, gens, rel_text, n_override);
      out.presentation = out.graded->base();
    } else {
      std::vector<Generator> gens;
      for (const auto& g : get_array(doc.at("generators"), "generators")) {
        Generator gen;
        gen.name = get_string(need(g, "name", "generators"), "generators/name");
        gen.filtration = get_int(need(g, "filtration", "generators"), "generators/filtration");
        gen.degree = g.contains("degree") ? get_int(g.at("degree"), "generators/degree") : 0;
        gens.push_back(std::move(gen));
      }
      const int trunc = get_int(need(doc, "truncation", "file"), "truncation");
      auto scratch = Presentation::make(ring, gens, {}, trunc, grading);
      std::vector<std::vector<Term>> rels;
      for (std::size_t i = 0; i < rel_text.size(); ++i)
        rels.push_back(rd.terms(*scratch, rel_text[i], "relations/" + std::to_string(i)));
      out.presentation = Presentation::make(ring, gens, std::move(rels), trunc, grading);
    }
  } else if (doc.contains("adams") || doc.contains("lambda")) {
    bad("file", "adams or lambda tables need \"generators\"");
  }

  const auto& P = out.presentation;
  if (doc.contains("adams")) {
    const auto& tab = doc.at("adams");
    if (!tab.is_object()) bad("adams", "expected an object keyed by k");
    AdamsFamily A(P);
    for (const auto& [key, imgs] : tab.items()) {
      int k = 0;
      try {
        k = std::stoi(key);
      } catch (const std::exception&) {
        bad("adams", "key \"" + key + "\" is not an integer");
      }
      if (k < 1 || std::to_string(k) != key) bad("adams", "key \"" + key + "\" is not a positive integer");
      const std::string where = "adams/" + key;
      const auto& arr = get_array(imgs, where);
      if (arr.size() != P->generator_count()) bad(where, "expected one image per generator");
      std::vector<TruncatedSeries> images;
      for (std::size_t i = 0; i < arr.size(); ++i)
        images.push_back(rd.series(P, get_string(arr[i], where), where + "/" + std::to_string(i)));
      A.set_images(k, std::move(images));
    }
    out.adams = std::move(A);
  }

  if (doc.contains("lambda")) {
    const auto& tab = doc.at("lambda");
    if (!tab.is_object()) bad("lambda", "expected an object keyed by i");
    std::map<int, std::vector<TruncatedSeries>> rows;
    for (const auto& [key, imgs] : tab.items()) {
      int i = 0;
      try {
        i = std::stoi(key);
      } catch (const std::exception&) {
        bad("lambda", "key \"" + key + "\" is not an integer");
      }
      if (i < 1 || std::to_string(i) != key) bad("lambda", "key \"" + key + "\" is not a positive integer");
      const std::string where = "lambda/" + key;
      const auto& arr = get_array(imgs, where);
      if (arr.size() != P->generator_count()) bad(where, "expected one entry per generator");
      std::vector<TruncatedSeries> entries;
      for (std::size_t g = 0; g < arr.size(); ++g)
        entries.push_back(rd.series(P, get_string(arr[g], where), where + "/" + std::to_string(g)));
      rows[i] = std::move(entries);
    }
    const int bound = rows.empty() ? 1 : rows.rbegin()->first;
    std::vector<std::vector<TruncatedSeries>> entries(P->generator_count());
    for (int i = 1; i <= bound; ++i) {
      if (i == 1 && !rows.count(1)) {
        for (std::size_t g = 0; g < entries.size(); ++g) entries[g].push_back(TruncatedSeries::generator(P, g));
        continue;
      }
      if (!rows.count(i)) bad("lambda", "missing lambda^" + std::to_string(i) + " below the largest listed index");
      for (std::size_t g = 0; g < entries.size(); ++g) entries[g].push_back(rows[i][g]);
    }
    out.lambda.emplace(P, std::move(entries));
  }

  if (doc.contains("ko")) out.ko = parse_ko(doc.at("ko"), rd);
  if (!out.presentation && !out.ko) bad("file", "needs \"generators\" or a \"ko\" block");
  return out;
}

std::string print_structure(const StructureFile& f) {
  Json doc;
  doc["format"] = kStructureFormat;
  if (f.presentation) {
    const auto& P = *f.presentation;
    doc["ring"] = P.ring().to_string();
    doc["grading"] = f.graded ? "graded" : "filtered";
    Json gens = Json::array();
    for (const auto& g : P.generators()) {
      Json e;
      e["name"] = g.name;
      if (!f.graded) e["filtration"] = g.filtration;
      e["degree"] = g.degree;
      gens.push_back(std::move(e));
    }
    doc["generators"] = std::move(gens);
    Json rels = Json::array();
    for (const auto& r : P.relations()) rels.push_back(format_terms(P, r.terms));
    doc["relations"] = std::move(rels);
    if (f.graded) {
      if (f.graded->bound() != f.graded->computed_bound()) doc["n_override"] = f.graded->bound();
    } else {
      doc["truncation"] = P.truncation();
    }
  }
  doc["primes"] = f.primes;
  doc["exponent_bound"] = f.exponent_bound;
  if (f.adams) {
    Json tab = Json::object();
    for (int k : f.adams->indices()) {
      const auto& m = f.adams->at(k);
      if (k == 1 && m.is_identity()) continue;
      tab[std::to_string(k)] = image_strings(m);
    }
    doc["adams"] = std::move(tab);
  }
  if (f.lambda) {
    Json tab = Json::object();
    for (int i = 2; i <= f.lambda->bound(); ++i) {
      Json row = Json::array();
      for (std::size_t g = 0; g < f.presentation->generator_count(); ++g) row.push_back(format_series(f.lambda->at(g, i)));
      tab[std::to_string(i)] = std::move(row);
    }
    doc["lambda"] = std::move(tab);
  }
  if (f.ko) {
    Json ko;
    ko["generator"] = f.ko->presentation->generators()[0].name;
    ko["truncation"] = f.ko->presentation->truncation();
    ko["psi2_xi_x"] = format_series(f.ko->psi2_xi_x);
    doc["ko"] = std::move(ko);
  }
  return dump_document(doc);
}

StructureFile structure_from_k_model(const KModelStructure& s, int exponent_bound) {
  StructureFile f;
  f.presentation = s.adams.presentation();
  f.adams = s.adams;
  f.primes = s.primes;
  f.exponent_bound = exponent_bound;
  return f;
}

StructureFile structure_from_ko(const KOModelStructure& s) {
  StructureFile f;
  f.ko = s;
  return f;
}

// ------------------------------------------------------------------ towers

namespace {

FiniteGroup parse_group(const Json& g, const std::string& where) {
  if (!g.is_object()) bad(where, "expected an object");
  if (g.contains("trivial")) return FiniteGroup::trivial();
  if (g.contains("cyclic")) {
    const int n = get_int(g.at("cyclic"), where + "/cyclic");
    if (n < 1) bad(where, "cyclic order must be positive");
    return FiniteGroup::cyclic(static_cast<std::uint32_t>(n));
  }
  if (g.contains("symmetric")) {
    const int d = get_int(g.at("symmetric"), where + "/symmetric");
    if (d < 1 || d > 6) bad(where, "symmetric degree must lie in 1..6");
    return FiniteGroup::symmetric(static_cast<unsigned>(d));
  }
  if (g.contains("permutations")) {
    const int d = get_int(need(g, "degree", where), where + "/degree");
    std::vector<std::vector<unsigned>> gens;
    for (const auto& p : get_array(g.at("permutations"), where + "/permutations")) {
      std::vector<unsigned> perm;
      for (const auto& x : get_array(p, where + "/permutations")) perm.push_back(static_cast<unsigned>(get_int(x, where)));
      gens.push_back(std::move(perm));
    }
    return FiniteGroup::from_permutations(gens, static_cast<unsigned>(d));
  }
  if (g.contains("table")) {
    std::vector<std::vector<std::uint32_t>> table;
    for (const auto& row : get_array(g.at("table"), where + "/table")) {
      std::vector<std::uint32_t> r;
      for (const auto& x : get_array(row, where + "/table")) {
        const int v = get_int(x, where + "/table");
        if (v < 0) bad(where, "negative element index");
        r.push_back(static_cast<std::uint32_t>(v));
      }
      table.push_back(std::move(r));
    }
    std::vector<std::string> labels;
    if (g.contains("labels"))
      for (const auto& l : get_array(g.at("labels"), where + "/labels")) labels.push_back(get_string(l, where + "/labels"));
    return FiniteGroup::from_table(std::move(table), std::move(labels));
  }
  bad(where, "expected one of trivial, cyclic, symmetric, permutations, table");
}

GroupMap parse_map(const Json& m, const FiniteGroup& from, const FiniteGroup& to, const std::string& where) {
  if (!m.is_object()) bad(where, "expected an object");
  if (m.contains("identity")) {
    if (from.order() != to.order()) bad(where, "identity map between groups of different order");
    GroupMap f(from.order());
    for (std::uint32_t i = 0; i < from.order(); ++i) f[i] = i;
    return f;
  }
  if (m.contains("zero")) return GroupMap(from.order(), to.identity());
  if (m.contains("table")) {
    GroupMap f;
    for (const auto& x : get_array(m.at("table"), where + "/table")) {
      const int v = get_int(x, where + "/table");
      if (v < 0 || static_cast<std::uint32_t>(v) >= to.order()) bad(where, "image index out of range");
      f.push_back(static_cast<std::uint32_t>(v));
    }
    if (f.size() != from.order()) bad(where, "map table needs one entry per element");
    return f;
  }
  if (m.contains("generators")) {
    std::vector<std::uint32_t> gens, imgs;
    for (const auto& x : get_array(m.at("generators"), where)) gens.push_back(static_cast<std::uint32_t>(get_int(x, where)));
    for (const auto& x : get_array(need(m, "images", where), where)) imgs.push_back(static_cast<std::uint32_t>(get_int(x, where)));
    if (gens.size() != imgs.size()) bad(where, "generators and images differ in length");
    for (auto g : gens)
      if (g >= from.order()) bad(where, "generator index out of range");
    for (auto g : imgs)
      if (g >= to.order()) bad(where, "image index out of range");
    auto f = extend_homomorphism(from, to, gens, imgs);
    if (!f) bad(where, "generator images do not extend to a homomorphism");
    return *f;
  }
  bad(where, "expected one of identity, zero, table, generators");
}

}  // namespace

TowerFile parse_tower(std::string_view text) {
  const Json doc = parse_json(text);
  check_format(doc, kTowerFormat);
  const std::string description = doc.contains("description") ? get_string(doc.at("description"), "description") : "";

  if (doc.contains("aut")) {
    const auto& a = doc.at("aut");
    const auto ring = CoefficientRing::parse(get_string(need(a, "ring", "aut"), "aut/ring"));
    std::vector<Generator> gens;
    for (const auto& g : get_array(need(a, "generators", "aut"), "aut/generators")) {
      Generator gen;
      gen.name = get_string(need(g, "name", "aut/generators"), "aut/generators/name");
      gen.filtration = get_int(need(g, "filtration", "aut/generators"), "aut/generators/filtration");
      gen.degree = g.contains("degree") ? get_int(g.at("degree"), "aut/generators/degree") : 0;
      gens.push_back(std::move(gen));
    }
    std::vector<int> truncs;
    for (const auto& t : get_array(need(a, "truncations", "aut"), "aut/truncations")) truncs.push_back(get_int(t, "aut/truncations"));
    if (truncs.empty() || !std::is_sorted(truncs.begin(), truncs.end())) bad("aut/truncations", "expected an ascending list");
    const Reader rd{text};
    auto scratch = Presentation::make(ring, gens, {}, truncs.back());
    std::vector<std::vector<Term>> rels;
    if (a.contains("relations")) {
      std::size_t i = 0;
      for (const auto& r : get_array(a.at("relations"), "aut/relations"))
        rels.push_back(rd.terms(*scratch, get_string(r, "aut/relations"), "aut/relations/" + std::to_string(i++)));
    }
    auto P = Presentation::make(ring, gens, std::move(rels), truncs.back());
    return TowerFile{aut_tower(P, truncs), description};
  }

  std::vector<FiniteGroup> levels;
  {
    std::size_t i = 0;
    for (const auto& g : get_array(need(doc, "levels", "file"), "levels")) levels.push_back(parse_group(g, "levels/" + std::to_string(i++)));
  }
  if (levels.empty()) bad("levels", "a tower needs at least one level");
  std::vector<GroupMap> maps;
  const auto& marr = get_array(need(doc, "maps", "file"), "maps");
  if (marr.size() + 1 != levels.size()) bad("maps", "expected one map per consecutive pair of levels");
  for (std::size_t n = 0; n < marr.size(); ++n)
    maps.push_back(parse_map(marr[n], levels[n + 1], levels[n], "maps/" + std::to_string(n)));
  return TowerFile{FiniteGroupTower(std::move(levels), std::move(maps)), description};
}

std::string print_tower(const TowerFile& f) {
  Json doc;
  doc["format"] = kTowerFormat;
  doc["description"] = f.description;
  Json levels = Json::array();
  for (const auto& G : f.tower.levels()) {
    Json g;
    Json table = Json::array();
    for (std::uint32_t a = 0; a < G.order(); ++a) {
      Json row = Json::array();
      for (std::uint32_t b = 0; b < G.order(); ++b) row.push_back(G.mul(a, b));
      table.push_back(std::move(row));
    }
    g["table"] = std::move(table);
    Json labels = Json::array();
    for (std::uint32_t a = 0; a < G.order(); ++a) labels.push_back(G.label(a));
    g["labels"] = std::move(labels);
    levels.push_back(std::move(g));
  }
  doc["levels"] = std::move(levels);
  Json maps = Json::array();
  for (const auto& m : f.tower.maps()) {
    Json e;
    e["table"] = m;
    maps.push_back(std::move(e));
  }
  doc["maps"] = std::move(maps);
  return dump_document(doc);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

}  // namespace lforge
