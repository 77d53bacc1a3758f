#include "lforge/rector_bs3.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "lforge/errors.hpp"
#include "lforge/lift_filtered.hpp"
#include "lforge/polynomial_io.hpp"

namespace lforge {

namespace {

// Univariate truncated polynomial, index = power of v, entry 0 unused.
using UPoly = std::vector<mpz_class>;

UPoly upoly_mul(const UPoly& a, const UPoly& b, int T) {
  UPoly r(static_cast<std::size_t>(T) + 1, 0);
  for (int i = 0; i <= T && i < static_cast<int>(a.size()); ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; i + j <= T && j < static_cast<int>(b.size()); ++j)
      if (b[j] != 0) r[i + j] += a[i] * b[j];
  }
  return r;
}

// P(Q(v)) truncated at v^T; P and Q have no constant term.
UPoly compose(const UPoly& P, const UPoly& Q, int T) {
  UPoly r(static_cast<std::size_t>(T) + 1, 0);
  const int top = std::min<int>(T, static_cast<int>(P.size()) - 1);
  for (int k = top; k >= 1; --k) {
    r[0] += P[k];
    r = upoly_mul(r, Q, T);
  }
  return r;
}

UPoly to_upoly(const TruncatedSeries& f, int T) {
  UPoly r(static_cast<std::size_t>(T) + 1, 0);
  for (const auto& t : f.terms())
    if (static_cast<int>(t.monomial[0]) <= T) r[t.monomial[0]] = t.coeff;
  return r;
}

TruncatedSeries from_upoly(const PresentationPtr& p, const UPoly& u) {
  std::vector<Term> terms;
  for (std::size_t k = 1; k < u.size(); ++k)
    if (u[k] != 0) {
      Monomial m;
      m[0] = static_cast<std::uint32_t>(k);
      terms.push_back({m, u[k]});
    }
  return TruncatedSeries::from_terms(p, std::move(terms));
}

mpz_class mod_pos(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

mpz_class ipow(long base, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), e);
  return r;
}

// Coefficient X - Y at v^n of P_A(P_S) - P_S(P_B) with the unknown slot of S
// zeroed, for the solve S_n = (X - Y) / (B_1^n - A_1).
mpz_class commutator_rest(const UPoly& A, const UPoly& S, const UPoly& B, int n) {
  UPoly s = S;
  s.resize(static_cast<std::size_t>(n) + 1);
  s[n] = 0;
  UPoly a(A.begin(), A.begin() + std::min<std::size_t>(A.size(), n + 1));
  UPoly b(B.begin(), B.begin() + std::min<std::size_t>(B.size(), n + 1));
  return compose(a, s, n)[n] - compose(s, b, n)[n];
}

void require_single_generator(const Presentation& p, RingKind kind, const char* what) {
  if (p.generator_count() != 1 || p.ring().kind() != kind) throw MalformedStructure(std::string(what) + " needs one generator over the expected ring");
}

}  // namespace

// ---------------------------------------------------------------- KO model

PresentationPtr KOModelStructure::default_presentation(int truncation, const std::string& name) {
  return Presentation::make(CoefficientRing::ko_even(), {{name, 4, 4}}, {}, truncation);
}

KOModelStructure KOModelStructure::make(TruncatedSeries psi2_xi_x) {
  if (!psi2_xi_x.presentation()) throw ShapeError("psi^2(xi x) is missing");
  require_single_generator(*psi2_xi_x.presentation(), RingKind::KOEven, "KO model");
  KOModelStructure s{psi2_xi_x.presentation(), std::move(psi2_xi_x)};
  if (!s.psi2_xi_x.is_homogeneous(0)) throw ShapeError("psi^2(xi x) must lie in degree 0");
  (void)a_invariant(s);
  return s;
}

KOModelStructure KOModelStructure::with_a(long a, int truncation) {
  auto p = default_presentation(truncation);
  return make(parse_series(p, "4*xi*x + " + std::to_string(2 * a) + "*bR*x^2"));
}

AInvariant a_invariant(const KOModelStructure& s) {
  const auto& P = *s.presentation;
  Monomial xi_x, br_x2;
  xi_x[0] = 1;
  xi_x[P.xi_slot()] = 1;
  br_x2[0] = 2;
  br_x2[P.br_slot()] = 1;
  if (P.truncation() <= 8) throw ShapeError("KO truncation must keep filtration 8");
  if (s.psi2_xi_x.coefficient(xi_x) != 4)
    throw ShapeError("psi^2(xi x) lacks the leading term 4*xi*x (found " + s.psi2_xi_x.coefficient(xi_x).get_str() + ")");
  for (const auto& t : s.psi2_xi_x.terms())
    if (P.weight(t.monomial) < 9 && t.monomial != xi_x && t.monomial != br_x2)
      throw ShapeError("psi^2(xi x) has an unexpected term below filtration 9 at slot " +
                       format_terms(P, {Term{t.monomial, 1}}));
  const mpz_class c = s.psi2_xi_x.coefficient(br_x2);
  if (!mpz_divisible_ui_p(c.get_mpz_t(), 2)) throw ShapeError("the bR*x^2 coefficient of psi^2(xi x) must be even");
  AInvariant out;
  out.raw = c / 2;
  out.residue = static_cast<int>(mod_pos(out.raw, 24).get_si());
  if (std::gcd(out.residue, 24) != 1)
    throw MalformedStructure("a = " + out.raw.get_str() + " is not coprime to 24");
  out.canonical = std::min(out.residue, 24 - out.residue);
  return out;
}

std::pair<int, int> signs_from_a(long a) {
  const long r = ((a % 24) + 24) % 24;
  if (std::gcd(r, 24L) != 1) throw InputError("a = " + std::to_string(a) + " is not coprime to 24");
  switch (std::min(r, 24 - r)) {
    case 1: return {1, 1};
    case 5: return {1, -1};
    case 7: return {-1, 1};
    default: return {-1, -1};
  }
}

int transport_a(int eps, const mpz_class& sigma2, const mpz_class& a_y) {
  if (eps != 1 && eps != -1) throw InvalidTransport("orientation sign must be +1 or -1");
  if (!mpz_divisible_ui_p(sigma2.get_mpz_t(), 4))
    throw InvalidTransport("sigma2 = " + sigma2.get_str() + " is not divisible by 4");
  const mpz_class r = mod_pos(6 * sigma2 + eps * a_y, 24);
  if (r != mod_pos(eps * a_y, 24)) throw Error("transported a is not +-a_Y modulo 24");
  return static_cast<int>(r.get_si());
}

KOIntertwiner find_ko_intertwiner(const KOModelStructure& x, const KOModelStructure& y) {
  const auto ax = a_invariant(x).raw, ay = a_invariant(y).raw;
  if (!x.presentation->same_ring(*y.presentation)) throw PresentationMismatch();
  KOIntertwiner out;
  for (int eps : {1, -1}) {
    const mpz_class diff = ax - eps * ay;
    if (!mpz_divisible_ui_p(diff.get_mpz_t(), 24)) continue;
    out.exists = true;
    out.epsilon = eps;
    out.sigma2 = diff / 6;
    break;
  }
  if (!out.exists) {
    out.reason = "a_X = " + ax.get_str() + " is not congruent to +-a_Y = +-" + ay.get_str() + " modulo 24";
    return out;
  }
  // Check the commutation below filtration 9 with sigma(x) = eps y + (sigma2/4) xi y^2.
  auto P = x.presentation->with_truncation(9);
  Monomial xi_x2;
  xi_x2[0] = 2;
  xi_x2[P->xi_slot()] = 1;
  FilteredMap sigma(P, {TruncatedSeries::generator(P, 0).scaled(out.epsilon) +
                        TruncatedSeries::monomial(P, xi_x2, out.sigma2 / 4)});
  const TruncatedSeries psx = x.psi2_xi_x.rebind(P), psy = y.psi2_xi_x.rebind(P);
  const TruncatedSeries lhs = sigma.apply(psx);
  const TruncatedSeries rhs = psy.scaled(out.epsilon) + (*(psy * psy).divided_exact(4)).scaled(out.sigma2);
  if (!(lhs == rhs)) throw Error("KO intertwiner failed verification");
  (void)transport_a(out.epsilon, out.sigma2, ay);
  return out;
}

// ----------------------------------------------------------------- K model

PresentationPtr KModelStructure::default_presentation(int max_power, const std::string& name) {
  if (max_power < 1) throw InputError("K model truncation must keep v");
  return Presentation::make(CoefficientRing::integers(), {{name, 4, 0}}, {}, 4 * max_power + 1);
}

KModelStructure KModelStructure::make(AdamsFamily adams, std::vector<int> primes) {
  const auto& P = *adams.presentation();
  require_single_generator(P, RingKind::Integers, "K model");
  if (P.generators()[0].filtration != 4) throw MalformedStructure("K model generator must have filtration 4");
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  Monomial v;
  v[0] = 1;
  for (int p : primes) {
    if (p < 2 || !is_prime(static_cast<unsigned long>(p))) throw InputError(std::to_string(p) + " is not a prime");
    const auto& img = adams.at(p).image(0);
    if (img.coefficient(v) != p * p)
      throw MalformedStructure("psi^" + std::to_string(p) + "(v) must have linear coefficient " + std::to_string(p * p));
    auto frob = check_frobenius(adams, p);
    if (!frob) throw MalformedStructure(frob.name + " fails: " + frob.witness);
  }
  return KModelStructure{std::move(adams), std::move(primes)};
}

std::vector<mpz_class> chebyshev_polynomial(int k, int max_power) {
  const int T = max_power;
  // s_k in the variable z with s_0 = 2, s_1 = z + 2, s_{k+1} = (z + 2) s_k - s_{k-1}.
  UPoly zp2(static_cast<std::size_t>(T) + 1, 0);
  zp2[0] = 2;
  if (T >= 1) zp2[1] = 1;
  UPoly prev(static_cast<std::size_t>(T) + 1, 0), cur = zp2;
  prev[0] = 2;
  if (k == 0) cur = prev;
  for (int i = 1; i < k; ++i) {
    UPoly next = upoly_mul(zp2, cur, T);
    for (int j = 0; j <= T; ++j) next[j] -= prev[j];
    prev = std::move(cur);
    cur = std::move(next);
  }
  cur[0] -= 2;
  return cur;
}

KModelStructure chebyshev_structure(const std::vector<int>& primes, int max_power, int exponent_bound) {
  auto p = KModelStructure::default_presentation(max_power);
  int top = exponent_bound;
  for (int q : primes) top = std::max(top, q);
  AdamsFamily A(p);
  for (int k = 2; k <= top; ++k) A.set_images(k, {from_upoly(p, chebyshev_polynomial(k, max_power))});
  return KModelStructure::make(std::move(A), primes);
}

int odd_sign(const KModelStructure& s, int p) {
  if (p < 3 || !is_prime(static_cast<unsigned long>(p))) throw InputError("odd_sign needs an odd prime");
  const int half = (p + 1) / 2;
  if (4 * half >= s.adams.presentation()->truncation())
    throw MalformedStructure("truncation drops the v^" + std::to_string(half) + " slot needed for (X/" +
                             std::to_string(p) + ")");
  const auto reduced = s.adams.at(p).image(0).reduce_truncation(2 * p + 3);
  Monomial m;
  m[0] = static_cast<std::uint32_t>(half);
  const mpz_class p2 = p * p;
  const mpz_class c = mod_pos(reduced.coefficient(m), p2);
  if (c == mod_pos(2 * p, p2)) return 1;
  if (c == mod_pos(-2 * p, p2)) return -1;
  throw MalformedStructure("coefficient of v^" + std::to_string(half) + " in psi^" + std::to_string(p) + "(v) is " +
                           c.get_str() + " mod " + p2.get_str() + ", not +-" + std::to_string(2 * p));
}

std::string RectorProfile::to_string() const {
  std::string out;
  if (a) out = "a=" + std::to_string(*a) + " (mod 24)";
  std::string signs_text;
  for (const auto& [p, s] : signs) {
    if (!signs_text.empty()) signs_text += ' ';
    signs_text += "(X/" + std::to_string(p) + ")=" + (s > 0 ? "+1" : "-1");
  }
  if (!signs_text.empty()) out += (out.empty() ? "" : "; ") + signs_text;
  return out.empty() ? "(no invariants)" : out;
}

RectorProfile rector_profile(const KModelStructure* k, const KOModelStructure* ko) {
  RectorProfile prof;
  if (k)
    for (int p : k->primes)
      if (p > 2) prof.signs[p] = odd_sign(*k, p);
  if (ko) {
    const auto a = a_invariant(*ko);
    prof.a = a.canonical;
    const auto [s2, s3] = signs_from_a(a.canonical);
    prof.signs[2] = s2;
    auto it = prof.signs.find(3);
    if (it != prof.signs.end() && it->second != s3)
      throw MalformedStructure("(X/3) from psi^3 disagrees with the value from a mod 24");
    prof.signs[3] = s3;
  }
  return prof;
}

// ------------------------------------------------------------ construction

KModelStructure construct_structure(const std::map<int, int>& target_signs, const std::vector<int>& primes_in,
                                    int max_power, const ConstructOptions& options) {
  std::vector<int> primes = primes_in;
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  if (primes.empty()) throw InputError("construct_structure needs at least one prime");
  for (int p : primes)
    if (p < 2 || !is_prime(static_cast<unsigned long>(p))) throw InputError(std::to_string(p) + " is not a prime");
  const int T = max_power;
  if (T < 2) throw InputError("construction needs truncation at least v^2");
  for (const auto& [p, s] : target_signs) {
    if (p == 2) continue;  // (X/2) is not visible in the K model
    if (std::find(primes.begin(), primes.end(), p) == primes.end())
      throw InputError("target sign at " + std::to_string(p) + " is outside the prime set");
    if ((p + 1) / 2 > T) throw InputError("truncation v^" + std::to_string(T) + " drops the (X/" + std::to_string(p) + ") slot");
    if (s != 1 && s != -1) throw InputError("signs must be +1 or -1");
  }
  const int K = options.exponent_bound;
  // The searched prime is the least one involved; every other prime up to K
  // or listed is forced by commutation with it.
  std::vector<int> involved = primes;
  for (int q = 2; q <= K; ++q)
    if (is_prime(static_cast<unsigned long>(q))) involved.push_back(q);
  std::sort(involved.begin(), involved.end());
  involved.erase(std::unique(involved.begin(), involved.end()), involved.end());
  const int p0 = involved.front();
  const std::vector<int> forced(involved.begin() + 1, involved.end());
  const int box = options.box_factor * p0 * p0;

  auto P = KModelStructure::default_presentation(T);
  UPoly a(static_cast<std::size_t>(T) + 1, 0);
  a[1] = p0 * p0;
  std::vector<UPoly> b(forced.size(), UPoly(static_cast<std::size_t>(T) + 1, 0));
  for (std::size_t i = 0; i < forced.size(); ++i) b[i][1] = forced[i] * forced[i];

  std::vector<int> candidates{0};
  for (int c = 1; c <= box; ++c) {
    candidates.push_back(-c);
    candidates.push_back(c);
  }

  std::optional<KModelStructure> found;
  int deepest = 1;
  std::function<bool(int)> search = [&](int n) -> bool {
    if (n > T) {
      AdamsFamily A(P);
      A.set_images(p0, {from_upoly(P, a)});
      for (std::size_t i = 0; i < forced.size(); ++i) A.set_images(forced[i], {from_upoly(P, b[i])});
      A.complete_composites(K);
      auto cert = certify(A, involved.back(), K, Execution::Serial);
      if (!cert.passed) return false;
      std::vector<int> listed = primes;
      found = KModelStructure::make(std::move(A), listed);
      return true;
    }
    deepest = std::max(deepest, n);
    for (int c : candidates) {
      const int frob = (n == p0) ? 1 : 0;
      if (((c - frob) % p0 + p0) % p0 != 0) continue;
      a[n] = c;
      bool ok = true;
      if (auto it = target_signs.find(p0); it != target_signs.end() && n == (p0 + 1) / 2) {
        const mpz_class q2 = p0 * p0;
        ok = mod_pos(a[n], q2) == mod_pos(2 * it->second * p0, q2);
      }
      for (std::size_t i = 0; ok && i < forced.size(); ++i) {
        const int q = forced[i];
        const mpz_class denom = ipow(p0 * p0, static_cast<unsigned long>(n)) - p0 * p0;
        const mpz_class num = commutator_rest(a, b[i], a, n);
        // Here S = psi^q and both outer maps are psi^{p0}: solve the v^n slot
        // of psi^{p0}(psi^q) = psi^q(psi^{p0}).
        if (!mpz_divisible_p(num.get_mpz_t(), denom.get_mpz_t())) {
          ok = false;
          break;
        }
        b[i][n] = num / denom;
        const int frob_q = (n == q) ? 1 : 0;
        if (mod_pos(b[i][n] - frob_q, q) != 0) ok = false;
        auto it = target_signs.find(q);
        if (ok && it != target_signs.end() && n == (q + 1) / 2) {
          const mpz_class q2 = q * q;
          if (mod_pos(b[i][n], q2) != mod_pos(2 * it->second * q, q2)) ok = false;
        }
      }
      if (ok && search(n + 1)) return true;
    }
    a[n] = 0;
    for (auto& bi : b) bi[n] = 0;
    return false;
  };
  if (!search(2))
    throw Unsatisfiable("no structure with the requested signs within |c| <= " + std::to_string(box) +
                            " up to v^" + std::to_string(T),
                        deepest);
  return std::move(*found);
}

// ------------------------------------------------------------ intertwiners

std::string Intertwiner::witness() const {
  auto p = KModelStructure::default_presentation(std::max(1, static_cast<int>(coefficients.size()) - 1));
  UPoly u = coefficients;
  return "v -> " + from_upoly(p, u).to_string();
}

Intertwiner find_intertwiner(const KModelStructure& A, const KModelStructure& B, int degree_bound,
                             const IntertwinerOptions& options) {
  if (!A.adams.presentation()->same_ring(*B.adams.presentation()))
    throw InputError("structures use different presentations");
  std::vector<int> primes;
  std::set_intersection(A.primes.begin(), A.primes.end(), B.primes.begin(), B.primes.end(), std::back_inserter(primes));
  if (primes.empty()) throw InputError("structures share no prime");
  const int T = std::min(A.max_power(), B.max_power());
  const int D = std::min(degree_bound, T);
  if (D < 1) throw InputError("degree bound must be positive");

  std::vector<UPoly> alpha, beta;
  for (int p : primes) {
    alpha.push_back(to_upoly(A.adams.at(p).image(0), T));
    beta.push_back(to_upoly(B.adams.at(p).image(0), T));
  }

  Intertwiner out;
  out.degree_bound = D;
  bool inconclusive = false;
  std::vector<int> eps_list{1};
  if (options.allow_reversal) eps_list.push_back(-1);
  for (int eps : eps_list) {
    UPoly s(static_cast<std::size_t>(T) + 1, 0);
    s[1] = eps;
    bool failed = false, open = false;
    for (int n = 2; n <= T && !failed && !open; ++n) {
      std::optional<mpz_class> value;
      for (std::size_t i = 0; i < primes.size(); ++i) {
        const int p = primes[i];
        const mpz_class rest = commutator_rest(alpha[i], s, beta[i], n);
        if (n > D) {
          if (rest != 0) open = true;
          continue;
        }
        const mpz_class denom = ipow(p * p, static_cast<unsigned long>(n)) - p * p;
        if (!mpz_divisible_p(rest.get_mpz_t(), denom.get_mpz_t())) {
          out.refutations.push_back({eps, n, p, "non-integral coefficient " + rest.get_str() + "/" + denom.get_str()});
          failed = true;
          break;
        }
        mpz_class v = rest / denom;
        if (value && *value != v) {
          out.refutations.push_back({eps, n, p, "primes disagree (" + value->get_str() + " vs " + v.get_str() + ")"});
          failed = true;
          break;
        }
        value = v;
      }
      if (value) s[n] = *value;
    }
    if (failed) continue;
    if (open) {
      inconclusive = true;
      continue;
    }
    // Verify by substitution: sigma psi^p_A == psi^p_B sigma as ring maps.
    const int j = 4 * T + 1;
    const auto P = A.adams.presentation()->with_truncation(j);
    FilteredMap sigma(P, {from_upoly(P, s)});
    for (int p : primes) {
      FilteredMap psiA(P, {A.adams.at(p).image(0).reduce_truncation(j).rebind(P)});
      FilteredMap psiB(P, {B.adams.at(p).image(0).reduce_truncation(j).rebind(P)});
      if (!(sigma.after(psiA) == psiB.after(sigma))) throw Error("intertwiner failed verification");
    }
    out.kind = Intertwiner::Kind::Isomorphic;
    s.resize(static_cast<std::size_t>(D) + 1);
    out.coefficients = std::move(s);
    return out;
  }
  out.kind = inconclusive ? Intertwiner::Kind::Inconclusive : Intertwiner::Kind::Distinct;
  return out;
}

KModelStructure conjugate(const KModelStructure& a, const TruncatedSeries& phi_v) {
  const auto& P = a.adams.presentation();
  FilteredMap phi(P, {phi_v.rebind(P)});
  const FilteredMap inv = certify_automorphism(phi).inverse();
  AdamsFamily B(P);
  for (int k : a.adams.indices())
    if (k > 1) B.set(k, phi.after(a.adams.at(k)).after(inv));
  return KModelStructure::make(std::move(B), a.primes);
}

}  // namespace lforge
