// Copyright 2026 The bioleak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bioleak/bioleak.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "bioleak/code_offset.h"
#include "bioleak/database.h"
#include "bioleak/error.h"
#include "bioleak/harness.h"
#include "bioleak/leakage.h"

struct bl_config {
  bioleak::ExperimentConfig config;
};

struct bl_vectors {
  bioleak::VectorSet set;
};

struct bl_database {
  bioleak::EnrollmentDatabase db;
};

namespace {

thread_local std::string last_error;

bl_status ToStatus(bioleak::ErrorCode code) {
  using bioleak::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return BL_ERR_INVALID_ARGUMENT;
    case ErrorCode::kDomain: return BL_ERR_DOMAIN;
    case ErrorCode::kPrecondition: return BL_ERR_PRECONDITION;
    case ErrorCode::kLengthMismatch: return BL_ERR_LENGTH_MISMATCH;
    case ErrorCode::kEmptySample: return BL_ERR_EMPTY_SAMPLE;
    case ErrorCode::kSizeLimit: return BL_ERR_SIZE_LIMIT;
    case ErrorCode::kBudgetExceeded: return BL_ERR_BUDGET_EXCEEDED;
    case ErrorCode::kRankDeficient: return BL_ERR_RANK_DEFICIENT;
    case ErrorCode::kUnknownUser: return BL_ERR_UNKNOWN_USER;
    case ErrorCode::kDuplicateUser: return BL_ERR_DUPLICATE_USER;
    case ErrorCode::kConfig: return BL_ERR_CONFIG;
    case ErrorCode::kFormat: return BL_ERR_FORMAT;
    case ErrorCode::kIo: return BL_ERR_IO;
  }
  return BL_ERR_INTERNAL;
}

bl_status Fail(bl_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
bl_status Guard(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return BL_OK;
  } catch (const bioleak::Error& e) {
    return Fail(ToStatus(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(BL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(BL_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(BL_ERR_INTERNAL, "unknown failure");
  }
}

void Require(bool ok, const char* what) {
  if (!ok) throw bioleak::Error(bioleak::ErrorCode::kInvalidArgument, what);
}

char* Duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* bl_status_string(bl_status status) {
  switch (status) {
    case BL_OK: return "ok";
    case BL_ERR_INVALID_ARGUMENT: return "invalid argument";
    case BL_ERR_DOMAIN: return "domain error";
    case BL_ERR_PRECONDITION: return "precondition violated";
    case BL_ERR_LENGTH_MISMATCH: return "length mismatch";
    case BL_ERR_EMPTY_SAMPLE: return "empty sample";
    case BL_ERR_SIZE_LIMIT: return "size limit exceeded";
    case BL_ERR_BUDGET_EXCEEDED: return "budget exceeded";
    case BL_ERR_RANK_DEFICIENT: return "rank deficient";
    case BL_ERR_UNKNOWN_USER: return "unknown user";
    case BL_ERR_DUPLICATE_USER: return "duplicate user";
    case BL_ERR_CONFIG: return "config error";
    case BL_ERR_FORMAT: return "format error";
    case BL_ERR_IO: return "I/O error";
    case BL_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* bl_last_error_message(void) { return last_error.c_str(); }

const char* bl_version(void) { return "1.0.0"; }

void bl_string_free(char* s) { std::free(s); }

bl_status bl_config_create(bl_config** out) {
  return Guard([&] {
    Require(out != nullptr, "null output pointer");
    *out = new bl_config();
  });
}

void bl_config_destroy(bl_config* config) { delete config; }

bl_status bl_config_load_file(bl_config* config, const char* path) {
  return Guard([&] {
    Require(config && path, "null argument");
    bioleak::ExperimentConfig copy = config->config;
    bioleak::ApplyConfigFile(copy, path);
    config->config = std::move(copy);
  });
}

bl_status bl_config_set(bl_config* config, const char* key, const char* value) {
  return Guard([&] {
    Require(config && key && value, "null argument");
    config->config.Set(key, value);
  });
}

bl_status bl_config_get(const bl_config* config, const char* key, char** value) {
  return Guard([&] {
    Require(config && key && value, "null argument");
    *value = Duplicate(config->config.Get(key));
  });
}

bl_status bl_config_hash(const bl_config* config, char** hash) {
  return Guard([&] {
    Require(config && hash, "null argument");
    *hash = Duplicate(config->config.Hash());
  });
}

bl_status bl_config_validate(const bl_config* config) {
  return Guard([&] {
    Require(config != nullptr, "null argument");
    config->config.Validate();
  });
}

bl_status bl_run_experiment(const bl_config* config, const char* name,
                            const char* out_path, char** csv) {
  return Guard([&] {
    Require(config && name, "null argument");
    const std::string text =
        bioleak::RunExperiment(name, config->config).ToString();
    if (out_path != nullptr) bioleak::WriteTextFile(out_path, text);
    if (csv != nullptr) *csv = Duplicate(text);
  });
}

bl_status bl_gnuplot_script(const char* name, const char* csv_path,
                            char** script) {
  return Guard([&] {
    Require(name && csv_path && script, "null argument");
    *script = Duplicate(bioleak::GnuplotScript(name, csv_path));
  });
}

bl_status bl_vectors_load_csv(const char* path, bl_vectors** out) {
  return Guard([&] {
    Require(path && out, "null argument");
    *out = new bl_vectors{bioleak::ReadVectorsCsv(path)};
  });
}

bl_status bl_vectors_synthetic(const bl_config* config, bl_vectors** out) {
  return Guard([&] {
    Require(config && out, "null argument");
    const auto& c = config->config;
    c.Validate();
    *out = new bl_vectors{
        bioleak::SyntheticVectors(c.users, c.dim, c.sigma_x(), c.RequireSeed())};
  });
}

bl_status bl_vectors_from_array(size_t count, size_t dim, const char* const* ids,
                                const double* values, bl_vectors** out) {
  return Guard([&] {
    Require(ids && values && out, "null argument");
    Require(count > 0 && dim > 0, "count and dim must be positive");
    bioleak::VectorSet set;
    set.dim = dim;
    for (size_t i = 0; i < count; ++i) {
      Require(ids[i] != nullptr, "null user id");
      set.ids.emplace_back(ids[i]);
    }
    set.values.assign(values, values + count * dim);
    *out = new bl_vectors{std::move(set)};
  });
}

bl_status bl_vectors_save_csv(const bl_vectors* vectors, const char* path) {
  return Guard([&] {
    Require(vectors && path, "null argument");
    bioleak::WriteTextFile(path, bioleak::FormatVectorsCsv(vectors->set));
  });
}

size_t bl_vectors_count(const bl_vectors* vectors) {
  return vectors ? vectors->set.size() : 0;
}

size_t bl_vectors_dim(const bl_vectors* vectors) {
  return vectors ? vectors->set.dim : 0;
}

bl_status bl_vectors_row(const bl_vectors* vectors, size_t i, const char** id,
                         double* out, size_t out_len) {
  return Guard([&] {
    Require(vectors != nullptr, "null argument");
    Require(i < vectors->set.size(), "row index out of range");
    if (id != nullptr) *id = vectors->set.ids[i].c_str();
    if (out != nullptr) {
      if (out_len != vectors->set.dim) {
        throw bioleak::Error(bioleak::ErrorCode::kLengthMismatch,
                             "output buffer length != dim");
      }
      const auto row = vectors->set.row(i);
      std::copy(row.begin(), row.end(), out);
    }
  });
}

void bl_vectors_destroy(bl_vectors* vectors) { delete vectors; }

bl_status bl_database_create(const bl_config* config, const bl_vectors* fit,
                             bl_database** out) {
  return Guard([&] {
    Require(config && out, "null argument");
    *out = new bl_database{bioleak::EnrollmentDatabase::FromConfig(
        config->config, fit ? &fit->set : nullptr)};
  });
}

bl_status bl_database_load(const char* path, bl_database** out) {
  return Guard([&] {
    Require(path && out, "null argument");
    *out = new bl_database{bioleak::EnrollmentDatabase::Load(path)};
  });
}

bl_status bl_database_save(const bl_database* db, const char* path) {
  return Guard([&] {
    Require(db && path, "null argument");
    db->db.Save(path);
  });
}

void bl_database_destroy(bl_database* db) { delete db; }

size_t bl_database_size(const bl_database* db) { return db ? db->db.size() : 0; }

size_t bl_database_dim(const bl_database* db) {
  return db ? db->db.params().dim : 0;
}

bl_status bl_database_enroll(bl_database* db, const char* user_id,
                             const double* x, size_t n) {
  return Guard([&] {
    Require(db && user_id && x, "null argument");
    db->db.Enroll(user_id, std::span<const double>(x, n));
  });
}

bl_status bl_database_enroll_vectors(bl_database* db, const bl_vectors* vectors) {
  return Guard([&] {
    Require(db && vectors, "null argument");
    // All or nothing: enrol into a copy first.
    bioleak::EnrollmentDatabase copy = db->db;
    copy.EnrollAll(vectors->set);
    db->db = std::move(copy);
  });
}

bl_status bl_database_verify(const bl_database* db, const char* user_id,
                             const double* y, size_t n, int has_threshold,
                             double threshold, bl_verify_result* result) {
  return Guard([&] {
    Require(db && user_id && y && result, "null argument");
    const auto r = db->db.Verify(
        user_id, std::span<const double>(y, n),
        has_threshold ? std::optional<double>(threshold) : std::nullopt);
    result->accepted = r.accepted ? 1 : 0;
    result->score = r.score;
    result->threshold = r.threshold;
  });
}

bl_status bl_binary_entropy(double p, double* out) {
  return Guard([&] {
    Require(out != nullptr, "null argument");
    *out = bioleak::BinaryEntropy(p);
  });
}

bl_status bl_thm1_sign_entropy(size_t intervals, size_t m, double p_middle,
                               double* out) {
  return Guard([&] {
    Require(out != nullptr, "null argument");
    *out = bioleak::Thm1SignEntropyGivenHelper(intervals, m, p_middle);
  });
}

bl_status bl_thm2_extremeness_entropy(size_t m, double f_neg_tau, double p0,
                                      double* out) {
  return Guard([&] {
    Require(out != nullptr, "null argument");
    *out = bioleak::Thm2ExtremenessEntropyGivenHelper(m, f_neg_tau, p0);
  });
}

bl_status bl_thm3_extremeness_entropy(double p0, double f_neg_tau, double* out) {
  return Guard([&] {
    Require(out != nullptr, "null argument");
    *out = bioleak::Thm3ExtremenessEntropyContinuum(p0, f_neg_tau);
  });
}

bl_status bl_noisy_enrollment_leakage_bound(size_t n, size_t k, size_t r,
                                            double epsilon, double* out) {
  return Guard([&] {
    Require(out != nullptr, "null argument");
    *out = bioleak::NoisyEnrollmentLeakageBound(n, k, r, epsilon);
  });
}

}  // extern "C"
