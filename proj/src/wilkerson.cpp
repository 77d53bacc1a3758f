#include "lforge/wilkerson.hpp"

#include <functional>

#include "lforge/errors.hpp"

namespace lforge {

CheckReport check_identity(const AdamsFamily& A) {
  CheckReport r{"identity", true, {}};
  const auto& P = A.presentation();
  const auto& psi1 = A.at(1);
  for (std::size_t g = 0; g < P->generator_count(); ++g) {
    if (!(psi1.image(g) == TruncatedSeries::generator(P, g))) {
      r.passed = false;
      r.witness = "psi^1(" + P->generators()[g].name + ") = " + psi1.image(g).to_string();
      break;
    }
  }
  return r;
}

CheckReport check_commutation(const AdamsFamily& A, int k, int l) {
  CheckReport r{"commutation(" + std::to_string(k) + "," + std::to_string(l) + ")", true, {}};
  const auto& P = A.presentation();
  const auto& psik = A.at(k);
  const auto& psil = A.at(l);
  const auto& psikl = A.at(k * l);
  for (std::size_t g = 0; g < P->generator_count(); ++g) {
    TruncatedSeries lhs = psil.apply(psik.image(g));
    if (!(lhs == psikl.image(g))) {
      r.passed = false;
      r.witness = "psi^" + std::to_string(l) + "(psi^" + std::to_string(k) + "(" + P->generators()[g].name +
                  ")) - psi^" + std::to_string(k * l) + " = " + (lhs - psikl.image(g)).to_string();
      break;
    }
  }
  return r;
}

CheckReport check_frobenius(const AdamsFamily& A, int p) {
  CheckReport r{"frobenius(" + std::to_string(p) + ")", true, {}};
  const auto& P = A.presentation();
  const auto& psip = A.at(p);
  const mpz_class prime = p;
  for (std::size_t g = 0; g < P->generator_count(); ++g) {
    TruncatedSeries diff = psip.image(g) - TruncatedSeries::generator(P, g).pow(static_cast<unsigned>(p));
    for (const auto& t : diff.terms()) {
      if (!P->ring().divisible(t.coeff, prime)) {
        r.passed = false;
        r.witness = "psi^" + std::to_string(p) + "(" + P->generators()[g].name + ") - " +
                    P->generators()[g].name + "^" + std::to_string(p) + " = " + diff.to_string();
        return r;
      }
    }
  }
  return r;
}

Certificate certify(const AdamsFamily& A, int prime_bound, int exponent_bound, Execution exec) {
  Certificate cert;
  cert.prime_bound = prime_bound;
  cert.exponent_bound = exponent_bound;
  cert.truncation = A.presentation()->truncation();

  std::vector<std::function<CheckReport()>> tasks;
  tasks.emplace_back([&] { return check_identity(A); });
  for (int k = 2; k <= exponent_bound; ++k)
    for (int l = 2; k * l <= exponent_bound; ++l) tasks.emplace_back([&, k, l] { return check_commutation(A, k, l); });
  for (int p = 2; p <= prime_bound; ++p)
    if (is_prime(static_cast<unsigned long>(p))) tasks.emplace_back([&, p] { return check_frobenius(A, p); });

  auto run = [&](std::size_t i) -> CheckReport {
    try {
      return tasks[i]();
    } catch (const MissingEntry& e) {
      return CheckReport{"missing", false, e.what()};
    }
  };

  cert.checks.resize(tasks.size());
  if (exec == Execution::Parallel) {
    const long n = static_cast<long>(tasks.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) cert.checks[static_cast<std::size_t>(i)] = run(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < tasks.size(); ++i) cert.checks[i] = run(i);
  }

  cert.passed = true;
  for (const auto& c : cert.checks)
    if (!c.passed) {
      cert.passed = false;
      cert.failure = c.name + ": " + c.witness;
      return cert;
    }

  if (A.presentation()->ring().torsion_free()) {
    try {
      cert.lambda = lambda_family_from_adams(A, exponent_bound);
    } catch (const DivisibilityFailure& e) {
      cert.passed = false;
      cert.failure = e.what();
    } catch (const MissingEntry& e) {
      cert.passed = false;
      cert.failure = std::string("lambda solve: ") + e.what();
    }
  }
  return cert;
}

}  // namespace lforge
