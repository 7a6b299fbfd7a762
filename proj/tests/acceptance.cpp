// Acceptance run: one PASS/FAIL line per criterion, exact comparisons only.
// Exit status is 0 iff every criterion passes.

#include <chrono>
#include <cstdio>

#include "symqva/qva_checks.hpp"

using namespace symqva;

namespace {

const std::vector<VFamily> kPresets{VFamily::schur(), VFamily::hall_littlewood(), VFamily::macdonald()};

struct Criterion {
  bool ok = true;
  std::string note;
  std::string witness;

  void add(const CheckReport& r) {
    if (r.passed() || !ok) {
      ok = ok && r.passed();
      return;
    }
    ok = false;
    witness = r.check_name + " [" + r.preset + "] " + to_string(r.status) + ": " + r.witness;
  }
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      witness = what;
    }
  }
};

int failures = 0;

void report(int id, const std::string& title, Criterion c, double seconds) {
  std::printf("%s %2d  %s", c.ok ? "PASS" : "FAIL", id, title.c_str());
  if (!c.note.empty()) std::printf(" | %s", c.note.c_str());
  std::printf(" (%.1fs)\n", seconds);
  if (!c.ok) {
    std::printf("        witness: %s\n", c.witness.c_str());
    ++failures;
  }
  std::fflush(stdout);
}

template <class F>
void criterion(int id, const std::string& title, F&& body) {
  const auto start = std::chrono::steady_clock::now();
  Criterion c;
  try {
    body(c);
  } catch (const std::exception& e) {
    c.ok = false;
    c.witness = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(id, title, std::move(c), secs);
}

}  // namespace

int main() {
  criterion(1, "deformed Heisenberg relations, |m|,|n| <= 6, weight <= 8, all presets", [](Criterion& c) {
    for (const auto& v : kPresets) c.add(check_heisenberg(v, 6, 8));
  });

  criterion(2, "Schur: Phi product equals the Jacobi-Trudi determinant, weight <= 6", [](Criterion& c) {
    c.require(partitions_of(6).size() == 11, "weight 6 should have 11 partitions");
    const CheckReport r = check_phi_identities(VFamily::schur(), 6);
    c.add(r);
    if (r.passed()) c.note = std::to_string(r.details.at("compared").get<int>()) + " partitions";
  });

  criterion(3, "Hall-Littlewood: Phi product equals Gram-Schmidt Q_lambda, weight <= 5", [](Criterion& c) {
    const CheckReport r = check_phi_identities(VFamily::hall_littlewood(), 5);
    c.add(r);
    if (r.passed()) c.note = std::to_string(r.details.at("compared").get<int>()) + " partitions";
  });

  criterion(4, "Macdonald: one-row equality for r <= 5, (2,2) differs", [](Criterion& c) {
    const CheckReport r = check_phi_identities(VFamily::macdonald(), 5);
    c.add(r);
    c.require(r.details.contains("two_row_witness"), "no (2,2) witness recorded");
    if (c.ok) {
      const auto& w = r.details.at("two_row_witness");
      c.note = "difference at p" + Partition(w.at("partition").get<std::vector<int>>()).to_string() + " is nonzero";
    }
  });

  criterion(5, "orthogonality, unitriangularity, duality, weight <= 6, all presets", [](Criterion& c) {
    for (const auto& v : kPresets) c.add(check_orthogonal_family(v, 6));
  });

  criterion(6, "degenerations q=0 -> Hall-Littlewood, t=0 -> Schur, v=1 -> Schur, weight <= 5", [](Criterion& c) {
    for (auto kind : {Specialization::macdonald_q0_is_hl, Specialization::hl_t0_is_schur, Specialization::schur_is_P_at_v1,
                      Specialization::macdonald_qt_is_schur})
      c.add(check_degeneration(kind, 5));
  });

  criterion(7, "Y(e^alpha,z) = Psi(z) modewise and Y(h,z) Heisenberg, weight <= 4, |charge| <= 2, order 6",
            [](Criterion& c) {
              for (const auto& v : kPresets) c.add(check_theorem_main(v, 4, 6, 2, 3));
            });

  criterion(8, "vacuum, creation, translation covariance for h, h^(2), e^alpha, e^-alpha, order 6", [](Criterion& c) {
    for (const auto& v : kPresets)
      for (const VMono& a : {VMono::hn(1), VMono::hn(2), VMono::e(1), VMono::e(-1)})
        c.add(check_field_axioms(a, v, 6, ModeWindow(-4, 3)));
  });

  criterion(9, "braided locality for a,b in {e^alpha, h}, c in {1, e^alpha}, N <= 4, order 6, width 8",
            [](Criterion& c) {
              LocalityOptions opt;
              opt.N_max = 4;
              opt.width = 8;
              std::string schur_n;
              for (const auto& v : kPresets)
                for (const VMono& a : {VMono::e(1), VMono::hn(1)})
                  for (const VMono& b : {VMono::e(1), VMono::hn(1)})
                    for (const VMono& cc : {VMono::one(), VMono::e(1)}) {
                      const CheckReport r = check_braided_locality(a, b, cc, v, 6, opt);
                      c.add(r);
                      if (v.kind() == VFamily::Kind::schur && a == VMono::e(1) && b == VMono::e(1) && r.passed()) {
                        c.require(r.details.at("minimal_N") == 0, "schur e^alpha pair: minimal N " + r.details.at("minimal_N").dump());
                        schur_n = r.details.at("holds_at_N").dump();
                      }
                    }
              const Bicharacter schur(VFamily::schur(), 6);
              c.require(Braiding(schur).scalar(VMono::e(1), VMono::e(1)) == KElement::constant(6, Rational(-1)),
                        "schur braiding on (e^alpha, e^alpha) is not the sign -1");
              c.note = "schur e^alpha pair: braiding -1, holds at N in " + schur_n +
                       "; the (w-z)^N convention rules out odd N";
            });

  criterion(10, "Yang-Baxter, shift and unitarity of R, order 4, all presets", [](Criterion& c) {
    for (const auto& v : kPresets) c.add(check_rmap_conditions(v, 4));
  });

  criterion(11, "Hall-Littlewood R(h (x) h): (z-w)^-2 terms cancel, directional expansions match, order 6",
            [](Criterion& c) {
              const CheckReport r = check_hl_Rhh(VFamily::hall_littlewood(), 6);
              c.add(r);
              if (r.passed())
                c.note = "global sign " + r.details.at("global_sign").dump() + ", verbatim for " +
                         r.details.at("verbatim_ordering").get<std::string>();
            });

  criterion(12, "negative controls: wrong h_n scaling, dropped r-factor, naive translation law for hl",
            [](Criterion& c) {
              for (const auto& v : kPresets) c.add(negative_control(check_heisenberg(v, 3, 4, RatFunc(2))));
              FieldOptions drop;
              drop.drop_r_factor = true;
              for (const auto& v : kPresets)
                c.add(negative_control(check_field_axioms(VMono::hn(2), v, 6, ModeWindow(-4, 3), drop)));
              const CheckReport wt = check_wrongtrcov(VFamily::hall_littlewood(), 6, ModeWindow(-4, 3));
              c.add(wt);
              c.require(wt.details.value("counterexample_found", false), "no counterexample for hall_littlewood");
            });

  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
