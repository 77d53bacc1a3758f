#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lforge/errors.hpp"
#include "lforge/execution.hpp"
#include "lforge/graded_snt.hpp"
#include "lforge/io.hpp"
#include "lforge/lift_filtered.hpp"
#include "lforge/polynomial_io.hpp"
#include "lforge/rector_bs3.hpp"
#include "lforge/tower.hpp"
#include "lforge/wilkerson.hpp"

namespace lforge::cli {

namespace {

using Json = nlohmann::ordered_json;

// A finished report: verdict token, human lines and a machine detail blob.
struct Report {
  std::string command;
  std::string verdict;
  int code = kSuccess;
  std::vector<std::string> lines;
  Json detail = Json::object();
  // Raw payload printed instead of the report (construct/convert to stdout).
  std::optional<std::string> payload;
};

struct Common {
  std::string format = "text";
  int threads = 0;
  Execution exec() const { return threads == 1 ? Execution::Serial : Execution::Parallel; }
};

std::string join(const std::vector<int>& v, const char* sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

int parse_int(const std::string& s, const std::string& what) {
  int v = 0;
  const char* b = s.data();
  const char* e = b + s.size();
  if (!s.empty() && *b == '+') ++b;
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e || b == e) throw InputError("bad " + what + " \"" + s + "\"");
  return v;
}

std::vector<int> parse_primes(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const int p = parse_int(item, "prime");
    if (p < 2 || !is_prime(static_cast<unsigned long>(p))) throw InputError(item + " is not a prime");
    out.push_back(p);
  }
  if (out.empty()) throw InputError("empty prime list");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::pair<int, int> parse_levels(const std::string& text) {
  auto pos = text.find("..");
  std::size_t skip = 2;
  if (pos == std::string::npos) {
    pos = text.find('-', 1);
    skip = 1;
  }
  if (pos == std::string::npos) throw InputError("levels must look like lo..hi, got \"" + text + "\"");
  const int lo = parse_int(text.substr(0, pos), "level");
  const int hi = parse_int(text.substr(pos + skip), "level");
  if (hi < lo) throw InputError("empty level range " + text);
  return {lo, hi};
}

std::map<int, int> parse_signs(const std::string& text) {
  std::map<int, int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("signs must look like 3=-1,5=+1");
    const int p = parse_int(item.substr(0, eq), "prime");
    const int s = parse_int(item.substr(eq + 1), "sign");
    if (s != 1 && s != -1) throw InputError("sign must be +1 or -1 in \"" + item + "\"");
    out[p] = s;
  }
  return out;
}

std::string describe(const Presentation& P) {
  std::string gens;
  for (const auto& g : P.generators()) {
    if (!gens.empty()) gens += ", ";
    gens += g.name + "(filtration " + std::to_string(g.filtration) + ", degree " + std::to_string(g.degree) + ")";
  }
  std::string s = P.ring().to_string() + "; generators " + gens;
  if (!P.relations().empty()) {
    s += "; relations ";
    for (std::size_t i = 0; i < P.relations().size(); ++i)
      s += (i ? ", " : "") + format_terms(P, P.relations()[i].terms);
  }
  return s + "; truncation " + std::to_string(P.truncation());
}

StructureFile load_structure_file(const std::string& path) { return parse_structure(read_text_file(path)); }

std::string sign_text(int s) { return s > 0 ? "+1" : "-1"; }

// ---------------------------------------------------------------- commands

Report cmd_certify(const std::string& path, const std::optional<std::string>& primes_opt, std::optional<int> k_opt,
                   std::optional<int> trunc, const Common& common) {
  auto f = load_structure_file(path);
  Report r{"certify"};
  if (!f.adams) {
    if (!f.lambda) throw InputError("file has neither an adams nor a lambda table");
    f.adams = adams_from_lambda(*f.lambda, f.lambda->bound());
    r.lines.push_back("adams operations computed from the lambda table");
  }
  const std::vector<int> primes = primes_opt ? parse_primes(*primes_opt) : f.primes;
  const int K = k_opt.value_or(f.exponent_bound);
  AdamsFamily A = *f.adams;
  if (trunc) {
    if (*trunc > A.presentation()->truncation() || *trunc < 1)
      throw InputError("--trunc must lie in 1.." + std::to_string(A.presentation()->truncation()));
    A = A.reduce_truncation(*trunc);
  }
  try {
    A.complete_composites(K);
  } catch (const MissingEntry&) {
    // reported by the certificate
  }
  const int P = primes.back();
  const auto cert = certify(A, P, K, common.exec());
  r.verdict = cert.passed ? "CERTIFIED" : "FAILED";
  r.code = cert.passed ? kSuccess : kMathFailure;
  r.lines.insert(r.lines.begin(), "certify: " + r.verdict + (cert.passed ? "" : " (" + cert.failure + ")"));
  r.lines.push_back("presentation: " + describe(*A.presentation()));
  r.lines.push_back("settings: primes {" + join(primes) + "} (Frobenius for p <= " + std::to_string(P) +
                    "), exponent bound K = " + std::to_string(K));
  Json checks = Json::array();
  for (const auto& c : cert.checks) {
    r.lines.push_back("  " + c.name + ": " + (c.passed ? "pass" : "FAIL " + c.witness));
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"witness", c.witness}});
  }
  Json lambda = Json::object();
  if (cert.lambda) {
    const auto& Pr = *cert.lambda->presentation();
    for (int i = 2; i <= cert.lambda->bound(); ++i)
      for (std::size_t g = 0; g < Pr.generator_count(); ++g) {
        const std::string key = "lambda^" + std::to_string(i) + "(" + Pr.generators()[g].name + ")";
        const std::string val = format_series(cert.lambda->at(g, i));
        r.lines.push_back("  " + key + " = " + val);
        lambda[key] = val;
      }
  }
  r.detail = {{"prime_bound", P},          {"primes", primes},
              {"exponent_bound", K},       {"truncation", A.presentation()->truncation()},
              {"checks", std::move(checks)}, {"failure", cert.failure},
              {"lambda", std::move(lambda)}};
  return r;
}

RectorProfile profile_of(const StructureFile& f, std::optional<KModelStructure>& k) {
  if (f.has_k_model_shape()) k = f.k_model();
  if (!k && !f.ko) throw InputError("file carries neither a K model nor a KO block");
  return rector_profile(k ? &*k : nullptr, f.ko ? &*f.ko : nullptr);
}

Report cmd_invariants(const std::string& path, const std::optional<std::string>& primes_opt) {
  auto f = load_structure_file(path);
  if (primes_opt) f.primes = parse_primes(*primes_opt);
  std::optional<KModelStructure> k;
  const auto prof = profile_of(f, k);
  Report r{"invariants"};
  r.verdict = prof.to_string();
  r.lines.push_back(r.verdict);
  Json signs = Json::object();
  for (const auto& [p, s] : prof.signs) signs[std::to_string(p)] = s;
  r.detail["signs"] = std::move(signs);
  if (k) {
    r.lines.push_back("K model: primes {" + join(k->primes) + "}, truncation v^" + std::to_string(k->max_power()));
    r.detail["k_primes"] = k->primes;
    r.detail["k_max_power"] = k->max_power();
  }
  if (f.ko) {
    const auto a = a_invariant(*f.ko);
    r.lines.push_back("KO model: a = " + a.raw.get_str() + ", a mod 24 = " + std::to_string(a.residue));
    r.detail["a"] = a.canonical;
    r.detail["a_raw"] = a.raw.get_str();
  }
  return r;
}

Report cmd_distinguish(const std::string& pa, const std::string& pb, std::optional<int> degree, bool reversal) {
  const auto fa = load_structure_file(pa), fb = load_structure_file(pb);
  Report r{"distinguish"};
  std::optional<KModelStructure> ka, kb;
  const auto prof_a = profile_of(fa, ka), prof_b = profile_of(fb, kb);
  r.lines.push_back("A: " + prof_a.to_string());
  r.lines.push_back("B: " + prof_b.to_string());

  std::optional<Intertwiner> it;
  int D = 0;
  if (ka && kb) {
    D = degree.value_or(std::min(ka->max_power(), kb->max_power()));
    IntertwinerOptions opt;
    opt.allow_reversal = reversal;
    it = find_intertwiner(*ka, *kb, D, opt);
    r.lines.push_back("settings: degree bound D = " + std::to_string(it->degree_bound) + ", primes {" +
                      join(ka->primes) + "}, orientation " + (reversal ? "either" : "preserving"));
  } else if (ka || kb) {
    throw InputError("only one file carries a K model");
  }
  std::optional<KOIntertwiner> ko;
  if (fa.ko && fb.ko) ko = find_ko_intertwiner(*fa.ko, *fb.ko);

  if (ko && !ko->exists) {
    r.verdict = "DISTINCT";
    r.lines.insert(r.lines.begin(), "DISTINCT (KO model: " + ko->reason + ")");
  } else if (it && it->kind == Intertwiner::Kind::Distinct) {
    const auto& ref = it->refutations.front();
    r.verdict = "DISTINCT";
    r.lines.insert(r.lines.begin(), "DISTINCT (refuted at degree " + std::to_string(ref.degree) + ", prime " +
                                        std::to_string(ref.prime) + ")");
    for (const auto& x : it->refutations)
      r.lines.push_back("  eps=" + sign_text(x.epsilon) + ": degree " + std::to_string(x.degree) + ", prime " +
                        std::to_string(x.prime) + ": " + x.reason);
  } else if (it && it->kind == Intertwiner::Kind::Inconclusive) {
    r.verdict = "INCONCLUSIVE";
    r.code = kMathFailure;
    r.lines.insert(r.lines.begin(), "INCONCLUSIVE (" + std::to_string(it->degree_bound) + ")");
  } else {
    r.verdict = "ISOMORPHIC";
    std::string witness = it ? it->witness() : "";
    if (ko) {
      std::string kw = "xi x -> " + std::string(ko->epsilon > 0 ? "" : "-") + "xi y";
      if (ko->sigma2 != 0)
        kw += (ko->sigma2 > 0 ? " + " + ko->sigma2.get_str() : " - " + mpz_class(-ko->sigma2).get_str()) + "*bR*y^2";
      witness += (witness.empty() ? "" : "; ") + kw;
    }
    r.lines.insert(r.lines.begin(), "ISOMORPHIC (witness: " + witness + ")");
    r.detail["witness"] = witness;
  }
  if (it) {
    Json refs = Json::array();
    for (const auto& x : it->refutations)
      refs.push_back({{"epsilon", x.epsilon}, {"degree", x.degree}, {"prime", x.prime}, {"reason", x.reason}});
    r.detail["degree_bound"] = it->degree_bound;
    r.detail["refutations"] = std::move(refs);
  }
  if (ko) r.detail["ko"] = {{"exists", ko->exists}, {"epsilon", ko->epsilon}, {"sigma2", ko->sigma2.get_str()}};
  r.detail["profile_a"] = prof_a.to_string();
  r.detail["profile_b"] = prof_b.to_string();
  return r;
}

Report lift_report(const StructureFile& f, const std::optional<std::string>& levels, int trials, std::uint64_t seed,
                   const Common& common) {
  Report r{"lift"};
  if (!f.presentation) throw InputError("file has no presentation");
  Json per = Json::array();
  if (f.graded) {
    const auto& G = *f.graded;
    auto [lo, hi] = levels ? parse_levels(*levels) : std::pair{G.bound() + 1, G.bound() + 10};
    GradedHarnessOptions opt;
    opt.trials = trials;
    opt.seed = seed;
    opt.exec = common.exec();
    const auto v = graded_tower_verdict(G, lo, hi, opt);
    r.lines.push_back("settings: graded, N = " + std::to_string(v.bound) + " (computed " +
                      std::to_string(G.computed_bound()) + "), levels " + std::to_string(lo) + ".." +
                      std::to_string(hi) + ", trials " + std::to_string(trials) + ", seed " + std::to_string(seed));
    for (const auto& w : v.levels) {
      std::string line = "  level " + std::to_string(w.level) + ": lifted " + std::to_string(w.lifted) + "/" +
                         std::to_string(w.trials) + ", restriction " + std::to_string(w.restriction_ok) +
                         ", relations " + std::to_string(w.relations_ok) + ", det " + std::to_string(w.determinant_ok);
      if (w.exhaustive_surjective) line += std::string(", exhaustive ") + (*w.exhaustive_surjective ? "onto" : "NOT onto");
      r.lines.push_back(line);
      per.push_back({{"level", w.level}, {"lifted", w.lifted}, {"restriction", w.restriction_ok},
                     {"relations", w.relations_ok}, {"determinant", w.determinant_ok}});
    }
    r.verdict = v.surjective ? "SURJECTIVE" : "NOT SURJECTIVE";
    r.code = v.surjective ? kSuccess : kMathFailure;
    r.lines.insert(r.lines.begin(), "lift: " + r.verdict + (v.surjective ? " (" + v.conclusion + ")" : " (" + v.failure + ")"));
    r.detail["bound"] = v.bound;
  } else {
    const auto& P = f.presentation;
    const int N = lifting_bound(*P);
    auto [lo, hi] = levels ? parse_levels(*levels) : std::pair{N + 1, N + 25};
    HarnessOptions opt;
    opt.trials = trials;
    opt.seed = seed;
    opt.exec = common.exec();
    const auto v = tower_surjectivity(P, lo, hi, opt);
    r.lines.push_back("settings: filtered, N = " + std::to_string(v.bound) + ", levels " + std::to_string(lo) + ".." +
                      std::to_string(hi) + ", trials " + std::to_string(trials) + ", seed " + std::to_string(seed));
    for (const auto& w : v.levels) {
      r.lines.push_back("  level " + std::to_string(w.level) + ": lifted " + std::to_string(w.lifted) + "/" +
                        std::to_string(w.trials) + ", restriction " + std::to_string(w.restriction_ok) + ", det " +
                        std::to_string(w.determinant_ok));
      per.push_back({{"level", w.level}, {"lifted", w.lifted}, {"restriction", w.restriction_ok},
                     {"determinant", w.determinant_ok}});
    }
    r.verdict = v.surjective ? "SURJECTIVE" : "NOT SURJECTIVE";
    r.code = v.surjective ? kSuccess : kMathFailure;
    r.lines.insert(r.lines.begin(), "lift: " + r.verdict + (v.surjective ? " (" + v.conclusion + ")" : " (" + v.failure + ")"));
    r.detail["bound"] = v.bound;
  }
  r.detail["levels"] = std::move(per);
  return r;
}

Report cmd_tower(const std::string& path, const std::optional<std::string>& levels, int trials, std::uint64_t seed,
                 const Common& common) {
  const std::string text = read_text_file(path);
  if (detect_file_kind(text) == FileKind::Structure) {
    auto r = lift_report(parse_structure(text), levels, trials, seed, common);
    r.command = "tower";
    return r;
  }
  const auto tf = parse_tower(text);
  Report r{"tower"};
  const auto rep = lim1_orbits(tf.tower, common.exec(), enumeration_budget());
  const auto surj = surjectivity_verdict(tf.tower);
  std::uint64_t total = 1;
  std::string orders;
  for (const auto& G : tf.tower.levels()) {
    total *= G.order();
    orders += (orders.empty() ? "" : " <- ") + std::to_string(G.order());
  }
  r.verdict = rep.orbit_count == 1 ? "TRIVIAL" : "NONTRIVIAL";
  r.code = rep.orbit_count == 1 ? kSuccess : kMathFailure;
  r.lines.push_back("lim¹: " + std::to_string(rep.orbit_count) + (rep.orbit_count == 1 ? " orbit" : " orbits"));
  if (!tf.description.empty()) r.lines.push_back("description: " + tf.description);
  r.lines.push_back("levels: depth " + std::to_string(tf.tower.depth()) + ", orders " + orders + ", " +
                    std::to_string(total) + " tuples");
  r.lines.push_back("basepoint orbit: " + std::to_string(rep.basepoint_orbit_size) + " of " + std::to_string(total));
  r.lines.push_back(surj.surjective ? "maps: all surjective, so " + surj.conclusion
                                    : "maps: G_" + std::to_string(*surj.failing_level + 1) + " -> G_" +
                                          std::to_string(*surj.failing_level) + " is not onto");
  r.lines.push_back("settings: budget " + std::to_string(enumeration_budget()));
  Json reps = Json::array();
  for (const auto& t : rep.representatives) reps.push_back(t);
  r.detail = {{"orbit_count", rep.orbit_count},
              {"basepoint_orbit_size", rep.basepoint_orbit_size},
              {"tuples", total},
              {"surjective", surj.surjective},
              {"representatives", std::move(reps)}};
  return r;
}

Report cmd_construct(const std::string& signs_text, const std::optional<std::string>& primes_opt, int trunc, int box,
                     int K, const std::optional<std::string>& output) {
  const auto signs = parse_signs(signs_text);
  const auto primes = primes_opt ? parse_primes(*primes_opt) : kDefaultPrimes;
  ConstructOptions opt;
  opt.box_factor = box;
  opt.exponent_bound = K;
  Report r{"construct"};
  try {
    const auto s = construct_structure(signs, primes, trunc, opt);
    const auto prof = rector_profile(&s, nullptr);
    r.verdict = "CONSTRUCTED";
    r.lines.push_back("construct: CONSTRUCTED " + prof.to_string());
    r.lines.push_back("settings: primes {" + join(primes) + "}, truncation v^" + std::to_string(trunc) +
                      ", box factor " + std::to_string(box) + ", K = " + std::to_string(K));
    for (int p : s.adams.indices())
      if (p > 1 && is_prime(static_cast<unsigned long>(p)))
        r.lines.push_back("  psi^" + std::to_string(p) + "(v) = " + format_series(s.adams.at(p).image(0)));
    const std::string file = print_structure(structure_from_k_model(s, K));
    if (output) {
      write_text_file(*output, file);
      r.lines.push_back("wrote " + *output);
    } else {
      r.payload = file;
    }
    r.detail["profile"] = prof.to_string();
  } catch (const Unsatisfiable& e) {
    r.verdict = "UNSATISFIABLE";
    r.code = kMathFailure;
    r.lines.push_back("construct: UNSATISFIABLE at level " + std::to_string(e.level()) + ": " + e.what());
    r.detail["level"] = e.level();
  }
  return r;
}

Report cmd_convert(const std::string& path, const std::string& to, std::optional<int> k_opt,
                   const std::optional<std::string>& output) {
  const std::string source = read_text_file(path);
  Report r{"convert"};
  if (detect_file_kind(source) == FileKind::Tower) {
    if (!to.empty() && to != "canonical") throw InputError("tower files only convert --to canonical");
    const std::string text = print_tower(parse_tower(source));
    r.verdict = "CONVERTED";
    r.lines.push_back("convert: CONVERTED to canonical");
    if (output) {
      write_text_file(*output, text);
      r.lines.push_back("wrote " + *output);
    } else {
      r.payload = text;
    }
    return r;
  }
  auto f = parse_structure(source);
  std::string target = to;
  if (target.empty()) target = f.adams ? "lambda" : "adams";
  const int K = k_opt.value_or(f.exponent_bound);
  try {
    if (target == "lambda") {
      if (!f.adams) throw InputError("file has no adams table");
      AdamsFamily A = *f.adams;
      A.complete_composites(K);
      f.lambda = lambda_family_from_adams(A, K);
      f.exponent_bound = K;
    } else if (target == "adams") {
      if (!f.lambda) throw InputError("file has no lambda table");
      f.adams = adams_from_lambda(*f.lambda, f.lambda->bound());
    } else if (target != "canonical") {
      throw InputError("--to must be lambda, adams or canonical");
    }
  } catch (const DivisibilityFailure& e) {
    r.verdict = "FAILED";
    r.code = kMathFailure;
    r.lines.push_back(std::string("convert: FAILED (") + e.what() + ")");
    return r;
  }
  const std::string text = print_structure(f);
  r.verdict = "CONVERTED";
  r.lines.push_back("convert: CONVERTED to " + target + " (K = " + std::to_string(K) + ")");
  if (output) {
    write_text_file(*output, text);
    r.lines.push_back("wrote " + *output);
  } else {
    r.payload = text;
  }
  return r;
}

void emit(const Report& r, const Common& common, std::ostream& out, std::ostream& err) {
  if (r.payload) {
    out << *r.payload;
    for (const auto& l : r.lines) err << l << '\n';
    return;
  }
  if (common.format == "machine") {
    Json j;
    j["command"] = r.command;
    j["verdict"] = r.verdict;
    j["exit"] = r.code;
    j["detail"] = r.detail;
    out << r.verdict << '\n' << j.dump() << '\n';
  } else {
    for (const auto& l : r.lines) out << l << '\n';
  }
}

int error_code(const std::exception& e) {
  if (dynamic_cast<const InputError*>(&e) || dynamic_cast<const ShapeError*>(&e) ||
      dynamic_cast<const LevelTooLow*>(&e) || dynamic_cast<const BudgetExceeded*>(&e) ||
      dynamic_cast<const PresentationMismatch*>(&e) || dynamic_cast<const FiltrationViolation*>(&e) ||
      dynamic_cast<const TruncationError*>(&e) || dynamic_cast<const MissingEntry*>(&e))
    return kInputError;
  if (dynamic_cast<const Error*>(&e)) return kMathFailure;
  return kInputError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"lambda-ring structures on truncated power series rings", "lforge"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--format", common.format, "Report format")->check(CLI::IsMember({"text", "machine"}))->capture_default_str();
  app.add_option("--threads", common.threads, "OpenMP threads (0 = runtime default, 1 = serial path)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  std::function<Report()> action;

  // certify
  auto* certify_cmd = app.add_subcommand("certify", "Check identity, commutation and Frobenius; solve for lambda");
  std::string certify_file;
  std::optional<std::string> certify_primes;
  std::optional<int> certify_k, certify_trunc;
  certify_cmd->add_option("file", certify_file, "Structure file")->required();
  certify_cmd->add_option("--primes", certify_primes, "Prime set, e.g. 2,3,5 (default: the file's)");
  certify_cmd->add_option("--exponent-bound,-K", certify_k, "Exponent bound K (default: the file's, else 12)");
  certify_cmd->add_option("--trunc", certify_trunc, "Reduce to this truncation first");
  certify_cmd->callback([&] { action = [&] { return cmd_certify(certify_file, certify_primes, certify_k, certify_trunc, common); }; });

  // invariants
  auto* inv_cmd = app.add_subcommand("invariants", "Extract the sign profile");
  std::string inv_file;
  std::optional<std::string> inv_primes;
  inv_cmd->add_option("file", inv_file, "Structure file")->required();
  inv_cmd->add_option("--primes", inv_primes, "Restrict the K-model primes");
  inv_cmd->callback([&] { action = [&] { return cmd_invariants(inv_file, inv_primes); }; });

  // distinguish
  auto* dist_cmd = app.add_subcommand("distinguish", "Search for an intertwiner or a refutation");
  std::string dist_a, dist_b;
  std::optional<int> dist_degree;
  bool dist_reversal = false;
  dist_cmd->add_option("file_a", dist_a, "First structure file")->required();
  dist_cmd->add_option("file_b", dist_b, "Second structure file")->required();
  dist_cmd->add_option("--degree,-D", dist_degree, "Degree bound D (default: common truncation)");
  dist_cmd->add_flag("--allow-reversal", dist_reversal, "Also try sigma(v) = -v + ...");
  dist_cmd->callback([&] { action = [&] { return cmd_distinguish(dist_a, dist_b, dist_degree, dist_reversal); }; });

  // lift and tower
  std::optional<std::string> lift_levels;
  int lift_trials = 50;
  std::uint64_t lift_seed = 0x5eed;
  std::string lift_file;
  auto* lift_cmd = app.add_subcommand("lift", "Lift random automorphisms through a range of levels");
  lift_cmd->add_option("file", lift_file, "Structure file (free filtered or graded)")->required();
  lift_cmd->add_option("--levels", lift_levels, "Level range lo..hi (default: N+1..N+25, graded N+1..N+10)");
  lift_cmd->add_option("--trials", lift_trials, "Random automorphisms per level")->capture_default_str();
  lift_cmd->add_option("--seed", lift_seed, "Random seed")->capture_default_str();
  lift_cmd->callback([&] {
    action = [&] { return lift_report(load_structure_file(lift_file), lift_levels, lift_trials, lift_seed, common); };
  });
  auto* tower_cmd = app.add_subcommand("tower", "lim^1 orbits of a finite tower, or the lift harness");
  std::string tower_file;
  tower_cmd->add_option("file", tower_file, "Tower file or structure file")->required();
  tower_cmd->add_option("--levels", lift_levels, "Level range for structure files");
  tower_cmd->add_option("--trials", lift_trials, "Random automorphisms per level")->capture_default_str();
  tower_cmd->add_option("--seed", lift_seed, "Random seed")->capture_default_str();
  tower_cmd->callback([&] { action = [&] { return cmd_tower(tower_file, lift_levels, lift_trials, lift_seed, common); }; });

  // construct
  auto* cons_cmd = app.add_subcommand("construct", "Build a K-model structure with prescribed odd signs");
  std::string cons_signs;
  std::optional<std::string> cons_primes, cons_out;
  int cons_trunc = 6, cons_box = 3, cons_k = 6;
  cons_cmd->add_option("--signs", cons_signs, "Target signs, e.g. 3=-1,5=+1")->required();
  cons_cmd->add_option("--primes", cons_primes, "Prime set (default 2,3,5)");
  cons_cmd->add_option("--trunc", cons_trunc, "Maximal v-power")->capture_default_str();
  cons_cmd->add_option("--box", cons_box, "Search box factor: |c| <= box * p0^2")->capture_default_str();
  cons_cmd->add_option("--exponent-bound,-K", cons_k, "Exponent bound K")->capture_default_str();
  cons_cmd->add_option("--output,-o", cons_out, "Write the structure file here instead of stdout");
  cons_cmd->callback([&] { action = [&] { return cmd_construct(cons_signs, cons_primes, cons_trunc, cons_box, cons_k, cons_out); }; });

  // convert
  auto* conv_cmd = app.add_subcommand("convert", "Convert between lambda and Adams tables");
  std::string conv_file, conv_to;
  std::optional<int> conv_k;
  std::optional<std::string> conv_out;
  conv_cmd->add_option("file", conv_file, "Structure or tower file")->required();
  conv_cmd->add_option("--to", conv_to, "lambda, adams or canonical (default: the missing table)");
  conv_cmd->add_option("--exponent-bound,-K", conv_k, "Exponent bound K (default: the file's)");
  conv_cmd->add_option("--output,-o", conv_out, "Write here instead of stdout");
  conv_cmd->callback([&] { action = [&] { return cmd_convert(conv_file, conv_to, conv_k, conv_out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    set_thread_count(common.threads);
    const Report r = action();
    emit(r, common, out, err);
    return r.code;
  } catch (const std::exception& e) {
    const int code = error_code(e);
    err << "lforge: error: " << e.what() << '\n';
    if (common.format == "machine") {
      Json j{{"verdict", "ERROR"}, {"exit", code}, {"message", e.what()}};
      if (auto* pe = dynamic_cast<const ParseError*>(&e)) {
        j["line"] = pe->line();
        j["column"] = pe->column();
      }
      out << "ERROR\n" << j.dump() << '\n';
    }
    return code;
  }
}

}  // namespace lforge::cli
