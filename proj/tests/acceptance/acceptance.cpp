// One line per acceptance criterion; exit status 1 if any criterion fails.
// Pass --verbose to also print every individual check.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "opz/error.hpp"
#include "opz/report.hpp"
#include "opz/verify.hpp"

namespace {

using opz::CheckRow;
using opz::CheckStatus;
using opz::NamedModel;

struct Criterion {
  int id;
  const char* title;
  std::function<std::vector<CheckRow>()> run;
};

template <typename F>
std::vector<CheckRow> each(const std::vector<NamedModel>& models, F f) {
  std::vector<CheckRow> out;
  for (const NamedModel& m : models) {
    auto rows = f(m);
    out.insert(out.end(), rows.begin(), rows.end());
  }
  return out;
}

std::vector<NamedModel> all_models() {
  std::vector<NamedModel> out = opz::oprl_test_models();
  for (NamedModel& m : opz::opuc_test_models()) out.push_back(std::move(m));
  return out;
}

std::vector<NamedModel> opuc_nonfree() { return {opz::verblunsky_half_model(), opz::random_verblunsky_model()}; }

std::vector<CheckRow> bundled_verify() {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(OPZ_MODELS_DIR)) {
    if (e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<CheckRow> rows;
  for (const auto& path : files) {
    const std::string name = path.filename().string();
    try {
      std::ifstream in(path, std::ios::binary);
      std::stringstream text;
      text << in.rdbuf();
      const opz::ModelFile file = opz::parse_model(text.str());
      const opz::RunResult r = opz::run_subcommand("verify", file, opz::RunConfig{});
      std::string failed;
      for (const auto& row : r.table.rows) {
        if (std::get<std::string>(row[3]) == "fail") failed = std::get<std::string>(row[1]);
      }
      rows.push_back({12, "verify exits 0", name, r.verification_failed ? CheckStatus::Fail : CheckStatus::Pass,
                      failed.empty() ? std::to_string(r.table.rows.size()) + " rows" : "failed: " + failed});
    } catch (const opz::Error& e) {
      rows.push_back({12, "verify exits 0", name, CheckStatus::Fail, e.what()});
    }
  }
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  const bool verbose = argc > 1 && std::strcmp(argv[1], "--verbose") == 0;
  const std::vector<Criterion> criteria = {
      {1, "Chebyshev exactness", [] { return opz::check_chebyshev_exactness(); }},
      {2, "periodic OPRL exactness",
       [] {
         return each({opz::jacobi_12_model(), opz::jacobi_11_model(), opz::random_jacobi_model()},
                     opz::check_exact_zeros);
       }},
      {3, "band structure",
       [] {
         auto rows = opz::check_reference_bands();
         auto more = each(all_models(), opz::check_band_edges);
         rows.insert(rows.end(), more.begin(), more.end());
         return rows;
       }},
      {4, "capacity and Thouless formula",
       [] {
         auto rows = opz::check_reference_capacity();
         auto more = each(all_models(), opz::check_thouless);
         rows.insert(rows.end(), more.begin(), more.end());
         return rows;
       }},
      {5, "counting bounds", [] { return each(opz::oprl_test_models(), opz::check_counting_bounds); }},
      {6, "clock law", [] { return opz::check_clock_law(); }},
      {7, "Floquet band identities", [] { return each(all_models(), opz::check_floquet_band); }},
      {8, "Jost convergence", [] { return each(all_models(), opz::check_jost_convergence); }},
      {9, "Jost zero bounds and limit points", [] { return each(all_models(), opz::check_jost_zeros); }},
      {10, "OPUC exactness",
       [] {
         auto rows = each(opz::opuc_test_models(), opz::check_opuc_exactness);
         auto more = opz::check_free_case();
         rows.insert(rows.end(), more.begin(), more.end());
         return rows;
       }},
      {11, "OPUC clock",
       [] {
         auto rows = each(opuc_nonfree(), opz::check_opuc_clock);
         auto more = opz::check_free_clock(opz::free_verblunsky_model());
         rows.insert(rows.end(), more.begin(), more.end());
         return rows;
       }},
      {12, "determinism",
       [] {
         auto rows = each(all_models(), opz::check_determinism);
         auto more = bundled_verify();
         rows.insert(rows.end(), more.begin(), more.end());
         return rows;
       }},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<CheckRow> rows = c.run();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    int pass = 0, fail = 0, skipped = 0;
    const CheckRow* first_fail = nullptr;
    for (const CheckRow& r : rows) {
      if (r.status == CheckStatus::Pass) ++pass;
      if (r.status == CheckStatus::Skip) ++skipped;
      if (r.status == CheckStatus::Fail) {
        ++fail;
        if (first_fail == nullptr) first_fail = &r;
      }
    }
    const bool ok = fail == 0 && pass > 0;
    if (!ok) ++failed;
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.title << " (" << pass << " passed, "
              << fail << " failed, " << skipped << " skipped, " << opz::format_double(std::round(secs * 10) / 10)
              << " s)";
    if (first_fail != nullptr) {
      std::cout << " first failure: [" << first_fail->model << "] " << first_fail->check << ": " << first_fail->detail;
    }
    std::cout << "\n";
    if (verbose) {
      for (const CheckRow& r : rows) {
        std::cout << "    " << opz::to_string(r.status) << "  [" << r.model << "] " << r.check << ": " << r.detail
                  << "\n";
      }
    }
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
