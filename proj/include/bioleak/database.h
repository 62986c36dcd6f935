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

// Enrolment database holding per-user public data for the SCA scheme
// (ambiguated ternary templates) or the HDS scheme (quantizer helper data
// plus code-offset sketches), and the verifier's decision rule.

#ifndef BIOLEAK_DATABASE_H_
#define BIOLEAK_DATABASE_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bioleak/code_offset.h"
#include "bioleak/harness.h"
#include "bioleak/sparse_sca.h"
#include "bioleak/zl_hds.h"

namespace bioleak {

enum class Scheme : std::uint8_t { kSca = 0, kHds = 1 };

struct DatabaseParams {
  Scheme scheme = Scheme::kSca;
  std::size_t dim = 256;  // N
  double sigma_x = 0.7071067811865476;
  double tau = 0.7071067811865476;
  std::uint64_t seed = 0;
  // sca
  TernaryRule rule = TernaryRule::TopK(26);
  double ambiguation_ratio = 0.5;
  // hds
  std::size_t intervals = 4;
  std::size_t subdivisions = 2;
  std::string code = "hamming74";  // as accepted by MakeCode
};

// Users' feature vectors with ids, row-major.
struct VectorSet {
  std::size_t dim = 0;
  std::vector<std::string> ids;
  std::vector<double> values;

  std::size_t size() const { return ids.size(); }
  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * dim, dim};
  }
};

// Lines "user_id,x1,...,xN"; an optional header starting with "user_id" is
// skipped. Throws kIo / kFormat.
VectorSet ReadVectorsCsv(const std::string& path);
VectorSet ParseVectorsCsv(const std::string& text);
std::string FormatVectorsCsv(const VectorSet& vectors);
// N(0, sigma_x^2 I) vectors, one stream per user; ids "user-00000", ...
VectorSet SyntheticVectors(std::size_t users, std::size_t dim, double sigma_x,
                           std::uint64_t seed);

struct VerifyResult {
  bool accepted = false;
  double score = 0.0;
  double threshold = 0.0;
};

class EnrollmentDatabase {
 public:
  // `projection` is used by the sca scheme and must have input_dim == dim.
  EnrollmentDatabase(DatabaseParams params, Projection projection);

  // Database parameters from an experiment config. The projection is
  // identity, random Gaussian (seeded from the config seed) or PCA fitted
  // on `fit` (required for pca).
  static EnrollmentDatabase FromConfig(const ExperimentConfig& config,
                                       const VectorSet* fit);

  const DatabaseParams& params() const { return params_; }
  const Projection& projection() const { return projection_; }
  std::size_t size() const { return order_.size(); }
  bool Contains(const std::string& user_id) const;
  const std::vector<std::string>& user_ids() const { return order_; }

  // Throws kDuplicateUser, kLengthMismatch, kInvalidArgument for an empty
  // id.
  void Enroll(const std::string& user_id, std::span<const double> x);
  void EnrollAll(const VectorSet& vectors);

  // sca: accept iff u . psi(W y) > threshold, default S_t / 2.
  // hds: accept iff the estimated number of bit errors is <= threshold,
  // default one per code block. Throws kUnknownUser.
  VerifyResult Verify(const std::string& user_id, std::span<const double> y,
                      std::optional<double> threshold = std::nullopt) const;

  // sca only; throws kUnknownUser, kInvalidArgument for hds databases.
  const ProtectedTemplate& Template(const std::string& user_id) const;

  std::vector<std::uint8_t> Serialize() const;
  static EnrollmentDatabase Deserialize(std::span<const std::uint8_t> bytes);
  void Save(const std::string& path) const;
  static EnrollmentDatabase Load(const std::string& path);

 private:
  struct HdsRecord {
    std::vector<std::uint16_t> helpers;     // one per component
    std::vector<std::uint32_t> syndromes;   // one per code block
  };

  std::size_t BlockCount() const;
  Bits SecretBits(std::span<const double> values, const HdsRecord* helpers,
                  HdsRecord* out) const;

  DatabaseParams params_;
  Projection projection_;
  std::optional<QuantizerSpec> quantizer_;
  std::optional<LinearCode> code_;
  std::vector<std::string> order_;
  std::map<std::string, ProtectedTemplate> sca_;
  std::map<std::string, HdsRecord> hds_;
};

}  // namespace bioleak

#endif  // BIOLEAK_DATABASE_H_
