#include "latcomm/latcomm.h"

#include <memory>
#include <stdexcept>
#include <string>

#include "core/errors.hpp"
#include "core/runner.hpp"
#include "core/threads.hpp"

struct latcomm_report {
  latcomm::Report report;
  std::string json;
  std::string csv;
};

namespace {

thread_local std::string g_last_error;

}  // namespace

extern "C" {

const char* latcomm_version(void) { return latcomm::kToolVersion; }

int latcomm_run(const char* config_json, latcomm_report** out) {
  if (out) *out = nullptr;
  if (!config_json || !out) {
    g_last_error = "latcomm_run: null argument";
    return LATCOMM_BAD_CONFIG;
  }
  try {
    const latcomm::ExperimentConfig cfg =
        latcomm::config_from_text(config_json);
    auto rep = std::make_unique<latcomm_report>();
    rep->report = latcomm::run_experiment(cfg);
    rep->json = latcomm::report_to_json(rep->report).dump(2);
    rep->csv = latcomm::report_to_csv(rep->report);
    const bool passed = rep->report.passed;
    *out = rep.release();
    g_last_error.clear();
    return passed ? LATCOMM_OK : LATCOMM_VERDICT_FAIL;
  } catch (const latcomm::config_error& e) {
    g_last_error = e.what();
    return LATCOMM_BAD_CONFIG;
  } catch (const latcomm::budget_error& e) {
    g_last_error = e.what();
    return LATCOMM_BUDGET_EXCEEDED;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();  // precondition violations surface as bad config
    return LATCOMM_BAD_CONFIG;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LATCOMM_INTERNAL_ERROR;
  }
}

const char* latcomm_report_json(const latcomm_report* r) {
  return r ? r->json.c_str() : "";
}

const char* latcomm_report_csv(const latcomm_report* r) {
  return r ? r->csv.c_str() : "";
}

int latcomm_report_passed(const latcomm_report* r) {
  return r && r->report.passed ? 1 : 0;
}

void latcomm_report_free(latcomm_report* r) { delete r; }

const char* latcomm_last_error(void) { return g_last_error.c_str(); }

void latcomm_set_threads(int n) { latcomm::set_thread_cap(n); }

}  // extern "C"
