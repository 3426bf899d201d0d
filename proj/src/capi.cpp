#include "boxnc/boxnc.h"

#include <cstring>
#include <new>
#include <string>

#include <nlohmann/json.hpp>

#include "boxnc/dispatch.hpp"
#include "boxnc/measures.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

boxnc_status status_from_exception() {
  try {
    throw;
  } catch (const boxnc::Error& e) {
    set_error(e.what());
    return BOXNC_ERR_INPUT;
  } catch (const nlohmann::json::exception& e) {
    set_error(e.what());
    return BOXNC_ERR_INPUT;
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return BOXNC_ERR_INTERNAL;
  } catch (const std::exception& e) {
    set_error(e.what());
    return BOXNC_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown error");
    return BOXNC_ERR_INTERNAL;
  }
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

struct boxnc_function {
  boxnc::FunctionSpec spec;
};

struct boxnc_measure {
  boxnc::DiscreteSignedMeasure measure;
};

extern "C" {

int boxnc_abi_version(void) { return 1; }

const char* boxnc_last_error(void) { return g_last_error.c_str(); }

void boxnc_string_free(char* text) { delete[] text; }

boxnc_status boxnc_run(const char* command, const char* input_json,
                       const boxnc_run_options* options, char** report_out) {
  if (command == nullptr || input_json == nullptr || report_out == nullptr) {
    set_error("null argument");
    return BOXNC_ERR_NULL_ARGUMENT;
  }
  *report_out = nullptr;
  try {
    boxnc::RunOptions run_options;
    if (options != nullptr) {
      if (options->has_seed) run_options.seed = options->seed;
      if (options->has_tol) run_options.tol = options->tol;
      if (options->has_trials) run_options.trials = static_cast<int>(options->trials);
      if (options->has_resolution) {
        run_options.resolution = static_cast<int>(options->resolution);
      }
    }
    std::string report;
    const int code = boxnc::run_command_text(command, input_json, run_options, report);
    *report_out = copy_string(report);
    if (code == 1) return BOXNC_VERDICT_NEGATIVE;
    if (code == 2) {
      set_error("input error; see the report's error object");
      return BOXNC_ERR_INPUT;
    }
    g_last_error.clear();
    return BOXNC_OK;
  } catch (...) {
    return status_from_exception();
  }
}

boxnc_status boxnc_function_create(const char* function_json, int arity, boxnc_function** out) {
  if (function_json == nullptr || out == nullptr) {
    set_error("null argument");
    return BOXNC_ERR_NULL_ARGUMENT;
  }
  *out = nullptr;
  try {
    const auto doc = nlohmann::json::parse(function_json);
    auto handle = new boxnc_function{boxnc::FunctionSpec::from_json(doc, arity)};
    *out = handle;
    g_last_error.clear();
    return BOXNC_OK;
  } catch (...) {
    return status_from_exception();
  }
}

int boxnc_function_arity(const boxnc_function* f) { return f == nullptr ? -1 : f->spec.arity(); }

boxnc_status boxnc_function_eval(const boxnc_function* f, const double* x, int dim,
                                 double* value_out) {
  if (f == nullptr || x == nullptr || value_out == nullptr) {
    set_error("null argument");
    return BOXNC_ERR_NULL_ARGUMENT;
  }
  try {
    *value_out = f->spec(std::span<const double>(x, static_cast<std::size_t>(dim)));
    g_last_error.clear();
    return BOXNC_OK;
  } catch (...) {
    return status_from_exception();
  }
}

void boxnc_function_destroy(boxnc_function* f) { delete f; }

boxnc_status boxnc_measure_create(const char* measure_json, boxnc_measure** out) {
  if (measure_json == nullptr || out == nullptr) {
    set_error("null argument");
    return BOXNC_ERR_NULL_ARGUMENT;
  }
  *out = nullptr;
  try {
    const auto doc = nlohmann::json::parse(measure_json);
    boxnc::DiscreteSignedMeasure measure(1);
    if (doc.contains("binomial")) {
      const auto& b = doc.at("binomial");
      measure = boxnc::DiscreteSignedMeasure::binomial(b.at("n").get<int>(),
                                                       b.at("p").get<double>());
    } else {
      std::vector<boxnc::Atom> atoms;
      int dim = doc.contains("dim") ? doc.at("dim").get<int>() : -1;
      for (const auto& item : doc.at("atoms")) {
        boxnc::Atom a;
        if (item.at("x").is_number()) {
          a.location = {item.at("x").get<double>()};
        } else {
          a.location = item.at("x").get<std::vector<double>>();
        }
        a.weight = item.at("w").get<double>();
        if (dim < 0) dim = static_cast<int>(a.location.size());
        atoms.push_back(std::move(a));
      }
      if (dim < 0) dim = 1;
      measure = boxnc::DiscreteSignedMeasure::from_atoms(dim, std::move(atoms));
    }
    *out = new boxnc_measure{std::move(measure)};
    g_last_error.clear();
    return BOXNC_OK;
  } catch (...) {
    return status_from_exception();
  }
}

int boxnc_measure_dim(const boxnc_measure* m) { return m == nullptr ? -1 : m->measure.dim(); }

size_t boxnc_measure_atom_count(const boxnc_measure* m) {
  return m == nullptr ? 0 : m->measure.atoms().size();
}

boxnc_status boxnc_measure_atom(const boxnc_measure* m, size_t index, double* location_out,
                                double* weight_out) {
  if (m == nullptr || location_out == nullptr || weight_out == nullptr) {
    set_error("null argument");
    return BOXNC_ERR_NULL_ARGUMENT;
  }
  if (index >= m->measure.atoms().size()) {
    set_error("atom index out of range");
    return BOXNC_ERR_INPUT;
  }
  const auto& atom = m->measure.atoms()[index];
  for (std::size_t i = 0; i < atom.location.size(); ++i) location_out[i] = atom.location[i];
  *weight_out = atom.weight;
  return BOXNC_OK;
}

boxnc_status boxnc_measure_mass(const boxnc_measure* m, double* out) {
  if (m == nullptr || out == nullptr) return BOXNC_ERR_NULL_ARGUMENT;
  *out = m->measure.mass();
  return BOXNC_OK;
}

boxnc_status boxnc_measure_moment(const boxnc_measure* m, const int* exponents, int dim,
                                  double* out) {
  if (m == nullptr || exponents == nullptr || out == nullptr) {
    set_error("null argument");
    return BOXNC_ERR_NULL_ARGUMENT;
  }
  try {
    *out = boxnc::moment(m->measure,
                         std::span<const int>(exponents, static_cast<std::size_t>(dim)));
    return BOXNC_OK;
  } catch (...) {
    return status_from_exception();
  }
}

boxnc_status boxnc_measure_survival(const boxnc_measure* m, double x, double* out) {
  if (m == nullptr || out == nullptr) return BOXNC_ERR_NULL_ARGUMENT;
  try {
    *out = boxnc::survival(m->measure, x);
    return BOXNC_OK;
  } catch (...) {
    return status_from_exception();
  }
}

boxnc_status boxnc_measure_truncated_moment(const boxnc_measure* m, double u, int q,
                                            int plus_side, double* out) {
  if (m == nullptr || out == nullptr) return BOXNC_ERR_NULL_ARGUMENT;
  try {
    *out = boxnc::truncated_power_moment(
        m->measure, u, q,
        plus_side != 0 ? boxnc::TruncationSide::plus : boxnc::TruncationSide::minus);
    return BOXNC_OK;
  } catch (...) {
    return status_from_exception();
  }
}

boxnc_status boxnc_measure_convolve(const boxnc_measure* a, const boxnc_measure* b,
                                    boxnc_measure** out) {
  if (a == nullptr || b == nullptr || out == nullptr) {
    set_error("null argument");
    return BOXNC_ERR_NULL_ARGUMENT;
  }
  *out = nullptr;
  try {
    *out = new boxnc_measure{boxnc::convolve(a->measure, b->measure)};
    return BOXNC_OK;
  } catch (...) {
    return status_from_exception();
  }
}

void boxnc_measure_destroy(boxnc_measure* m) { delete m; }

}  // extern "C"
