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

#include "bioleak/database.h"

#include <algorithm>
#include <bit>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "bioleak/error.h"
#include "byte_io.h"

namespace bioleak {

using internal::ByteReader;
using internal::ByteWriter;

namespace {

constexpr std::uint16_t kDatabaseVersion = 1;

std::string Real17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::size_t BitsPerSecret(std::size_t intervals) {
  return static_cast<std::size_t>(std::bit_width(intervals - 1));
}

void AppendGray(std::size_t s, std::size_t width, Bits& out) {
  const std::size_t g = s ^ (s >> 1);
  for (std::size_t b = 0; b < width; ++b) out.push_back((g >> b) & 1u);
}

}  // namespace

VectorSet ParseVectorsCsv(const std::string& text) {
  VectorSet set;
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (set.ids.empty() && set.values.empty() && line.rfind("user_id", 0) == 0) {
      continue;
    }
    std::istringstream cells(line);
    std::string cell;
    std::getline(cells, cell, ',');
    if (cell.empty()) {
      throw Error(ErrorCode::kFormat,
                  "vectors line " + std::to_string(number) + ": empty user id");
    }
    const std::string id = cell;
    std::size_t count = 0;
    while (std::getline(cells, cell, ',')) {
      errno = 0;
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (cell.empty() || errno != 0 || *end != '\0' || !std::isfinite(v)) {
        throw Error(ErrorCode::kFormat, "vectors line " + std::to_string(number) +
                                            ": bad value '" + cell + "'");
      }
      set.values.push_back(v);
      ++count;
    }
    if (count == 0) {
      throw Error(ErrorCode::kFormat,
                  "vectors line " + std::to_string(number) + ": no values");
    }
    if (set.ids.empty()) {
      set.dim = count;
    } else if (count != set.dim) {
      throw Error(ErrorCode::kFormat, "vectors line " + std::to_string(number) +
                                          ": expected " + std::to_string(set.dim) +
                                          " values");
    }
    set.ids.push_back(id);
  }
  if (set.ids.empty()) throw Error(ErrorCode::kFormat, "no vectors");
  return set;
}

VectorSet ReadVectorsCsv(const std::string& path) {
  return ParseVectorsCsv(ReadTextFile(path));
}

std::string FormatVectorsCsv(const VectorSet& vectors) {
  std::string out = "user_id";
  for (std::size_t n = 0; n < vectors.dim; ++n) out += ",x" + std::to_string(n + 1);
  out += '\n';
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    out += vectors.ids[i];
    for (double v : vectors.row(i)) out += "," + Real17(v);
    out += '\n';
  }
  return out;
}

VectorSet SyntheticVectors(std::size_t users, std::size_t dim, double sigma_x,
                           std::uint64_t seed) {
  if (users == 0 || dim == 0) {
    throw Error(ErrorCode::kInvalidArgument, "need users and dim > 0");
  }
  if (!(sigma_x > 0.0)) throw Error(ErrorCode::kDomain, "sigma_x must be > 0");
  VectorSet set;
  set.dim = dim;
  set.values.resize(users * dim);
  for (std::size_t c = 0; c < users; ++c) {
    char id[32];
    std::snprintf(id, sizeof id, "user-%05zu", c);
    set.ids.push_back(id);
    Rng rng = MakeStream(seed, StreamLabel::kEnrollmentVector, {c});
    std::normal_distribution<double> normal(0.0, sigma_x);
    for (std::size_t n = 0; n < dim; ++n) set.values[c * dim + n] = normal(rng);
  }
  return set;
}

EnrollmentDatabase::EnrollmentDatabase(DatabaseParams params,
                                       Projection projection)
    : params_(std::move(params)), projection_(std::move(projection)) {
  if (projection_.input_dim() != params_.dim) {
    throw Error(ErrorCode::kLengthMismatch, "projection input dim != dim");
  }
  if (!(params_.sigma_x > 0.0)) throw Error(ErrorCode::kDomain, "sigma_x must be > 0");
  if (params_.scheme == Scheme::kSca) {
    if (params_.rule.kind == TernaryRule::Kind::kTopK &&
        (params_.rule.top_k == 0 || params_.rule.top_k > projection_.output_dim())) {
      throw Error(ErrorCode::kInvalidArgument, "S_t out of range");
    }
    AmbiguationCount(1, 0, params_.ambiguation_ratio);  // range check
  } else {
    if (params_.subdivisions > 65535) {
      throw Error(ErrorCode::kInvalidArgument, "m must be <= 65535");
    }
    quantizer_ = MakeEquiprobableQuantizer(GaussianDistribution(params_.sigma_x),
                                           params_.intervals,
                                           params_.subdivisions);
    code_ = MakeCode(params_.code);
  }
}

EnrollmentDatabase EnrollmentDatabase::FromConfig(const ExperimentConfig& config,
                                                  const VectorSet* fit) {
  config.Validate();
  const std::uint64_t seed = config.RequireSeed();
  DatabaseParams p;
  p.scheme = config.scheme == "hds" ? Scheme::kHds : Scheme::kSca;
  p.dim = fit ? fit->dim : config.dim;
  p.sigma_x = config.sigma_x();
  p.tau = config.tau();
  p.seed = seed;
  p.ambiguation_ratio = config.ambiguation_ratio;
  p.intervals = config.hds_j;
  p.subdivisions = config.hds_m;
  // Store the parity-check matrix itself so the file is self-contained.
  p.code = FormatParityCheck(MakeCode(config.code));

  std::optional<Projection> proj;
  if (p.scheme == Scheme::kHds || config.projection == "identity") {
    proj = Projection::Identity(p.dim);
  } else if (config.projection == "random") {
    const std::size_t l = config.output_dim ? config.output_dim : p.dim;
    proj = Projection::RandomGaussian(
        l, p.dim, DeriveSeed(seed, StreamLabel::kProjection, {0}));
  } else {
    if (fit == nullptr) {
      throw Error(ErrorCode::kConfig, "pca projection needs enrolment vectors");
    }
    const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                         Eigen::RowMajor>>
        x(fit->values.data(), static_cast<Eigen::Index>(fit->size()),
          static_cast<Eigen::Index>(fit->dim));
    proj = PcaProjection(x.transpose());
  }
  const double l = static_cast<double>(proj->output_dim());
  p.rule = TernaryRule::TopK(std::clamp<std::size_t>(
      static_cast<std::size_t>(std::llround(config.sparsity * l)), 1,
      proj->output_dim()));
  return EnrollmentDatabase(std::move(p), std::move(*proj));
}

bool EnrollmentDatabase::Contains(const std::string& user_id) const {
  return sca_.count(user_id) || hds_.count(user_id);
}

std::size_t EnrollmentDatabase::BlockCount() const {
  const std::size_t bits = params_.dim * BitsPerSecret(params_.intervals);
  return (bits + code_->n() - 1) / code_->n();
}

Bits EnrollmentDatabase::SecretBits(std::span<const double> values,
                                    const HdsRecord* helpers,
                                    HdsRecord* out) const {
  const std::size_t width = BitsPerSecret(params_.intervals);
  Bits bits;
  bits.reserve(BlockCount() * code_->n());
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::size_t s;
    if (out != nullptr) {
      const HelperPair pair = Gen(values[i], *quantizer_);
      out->helpers.push_back(static_cast<std::uint16_t>(pair.helper));
      s = pair.secret;
    } else {
      s = ReconstructSecret(values[i], helpers->helpers[i], *quantizer_);
    }
    AppendGray(s, width, bits);
  }
  bits.resize(BlockCount() * code_->n(), 0);
  return bits;
}

void EnrollmentDatabase::Enroll(const std::string& user_id,
                                std::span<const double> x) {
  if (user_id.empty() || user_id.size() > 65535) {
    throw Error(ErrorCode::kInvalidArgument, "user id must have 1..65535 bytes");
  }
  if (Contains(user_id)) {
    throw Error(ErrorCode::kDuplicateUser, "user '" + user_id + "' already enrolled");
  }
  if (x.size() != params_.dim) {
    throw Error(ErrorCode::kLengthMismatch, "enrolment vector has wrong dimension");
  }
  if (params_.scheme == Scheme::kSca) {
    const TernaryCodeword v = StcEncode(projection_, x, params_.rule);
    Rng rng = MakeStream(params_.seed, StreamLabel::kAmbiguation, {order_.size()});
    const std::size_t s_n = AmbiguationCount(projection_.output_dim(), v.sparsity(),
                                             params_.ambiguation_ratio);
    ProtectedTemplate t;
    t.user_id = user_id;
    t.projection_kind = projection_.kind();
    t.codeword = PlanAmbiguation(v, rng).Apply(v, s_n);
    t.clean_sparsity = v.sparsity();
    t.noise_count = s_n;
    t.tau = params_.tau;
    sca_.emplace(user_id, std::move(t));
  } else {
    HdsRecord rec;
    const Bits bits = SecretBits(x, nullptr, &rec);
    const std::size_t n = code_->n();
    for (std::size_t b = 0; b < BlockCount(); ++b) {
      rec.syndromes.push_back(
          code_->SyndromeOf(PackBits(std::span(bits).subspan(b * n, n))));
    }
    hds_.emplace(user_id, std::move(rec));
  }
  order_.push_back(user_id);
}

void EnrollmentDatabase::EnrollAll(const VectorSet& vectors) {
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    Enroll(vectors.ids[i], vectors.row(i));
  }
}

VerifyResult EnrollmentDatabase::Verify(const std::string& user_id,
                                        std::span<const double> y,
                                        std::optional<double> threshold) const {
  if (!Contains(user_id)) {
    throw Error(ErrorCode::kUnknownUser, "unknown user '" + user_id + "'");
  }
  if (y.size() != params_.dim) {
    throw Error(ErrorCode::kLengthMismatch, "probe has wrong dimension");
  }
  VerifyResult r;
  if (params_.scheme == Scheme::kSca) {
    const ProtectedTemplate& t = sca_.at(user_id);
    r.score = static_cast<double>(VerifyScore(t.codeword, projection_, y, params_.rule));
    r.threshold = threshold.value_or(static_cast<double>(t.clean_sparsity) / 2.0);
    r.accepted = r.score > r.threshold;
  } else {
    const HdsRecord& rec = hds_.at(user_id);
    const Bits bits = SecretBits(y, &rec, nullptr);
    const std::size_t n = code_->n();
    std::size_t errors = 0;
    for (std::size_t b = 0; b < BlockCount(); ++b) {
      const std::uint32_t syn =
          code_->SyndromeOf(PackBits(std::span(bits).subspan(b * n, n)));
      errors += static_cast<std::size_t>(
          std::popcount(code_->CosetLeader(syn ^ rec.syndromes[b])));
    }
    r.score = static_cast<double>(errors);
    r.threshold = threshold.value_or(static_cast<double>(BlockCount()));
    r.accepted = r.score <= r.threshold;
  }
  return r;
}

const ProtectedTemplate& EnrollmentDatabase::Template(
    const std::string& user_id) const {
  if (params_.scheme != Scheme::kSca) {
    throw Error(ErrorCode::kInvalidArgument, "not an sca database");
  }
  const auto it = sca_.find(user_id);
  if (it == sca_.end()) {
    throw Error(ErrorCode::kUnknownUser, "unknown user '" + user_id + "'");
  }
  return it->second;
}

std::vector<std::uint8_t> EnrollmentDatabase::Serialize() const {
  ByteWriter w;
  w.PutText("BLDB");
  w.Put<std::uint16_t>(kDatabaseVersion);
  w.Put<std::uint8_t>(static_cast<std::uint8_t>(params_.scheme));
  w.Put<std::uint32_t>(static_cast<std::uint32_t>(params_.dim));
  w.PutReal(params_.sigma_x);
  w.PutReal(params_.tau);
  w.Put<std::uint64_t>(params_.seed);
  w.Put<std::uint8_t>(static_cast<std::uint8_t>(params_.rule.kind));
  w.Put<std::uint32_t>(static_cast<std::uint32_t>(params_.rule.top_k));
  w.PutReal(params_.rule.lambda);
  w.PutReal(params_.ambiguation_ratio);
  w.Put<std::uint32_t>(static_cast<std::uint32_t>(params_.intervals));
  w.Put<std::uint32_t>(static_cast<std::uint32_t>(params_.subdivisions));
  w.Put<std::uint32_t>(static_cast<std::uint32_t>(params_.code.size()));
  w.PutText(params_.code);
  w.Put<std::uint8_t>(static_cast<std::uint8_t>(projection_.kind()));
  w.Put<std::uint32_t>(static_cast<std::uint32_t>(projection_.output_dim()));
  if (projection_.kind() != ProjectionKind::kIdentity) {
    const Eigen::MatrixXd& m = projection_.matrix();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) w.PutReal(m(i, j));
  }
  w.Put<std::uint32_t>(static_cast<std::uint32_t>(order_.size()));
  for (const std::string& id : order_) {
    w.Put<std::uint16_t>(static_cast<std::uint16_t>(id.size()));
    w.PutText(id);
    std::vector<std::uint8_t> payload;
    if (params_.scheme == Scheme::kSca) {
      payload = SerializeTemplate(sca_.at(id));
    } else {
      const HdsRecord& rec = hds_.at(id);
      ByteWriter p;
      p.Put<std::uint32_t>(static_cast<std::uint32_t>(rec.helpers.size()));
      for (std::uint16_t h : rec.helpers) p.Put(h);
      p.Put<std::uint32_t>(static_cast<std::uint32_t>(rec.syndromes.size()));
      for (std::uint32_t s : rec.syndromes) p.Put(s);
      payload = std::move(p.bytes());
    }
    w.Put<std::uint32_t>(static_cast<std::uint32_t>(payload.size()));
    w.PutBytes(payload);
  }
  return std::move(w.bytes());
}

EnrollmentDatabase EnrollmentDatabase::Deserialize(
    std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  if (r.GetText(4) != "BLDB") throw Error(ErrorCode::kFormat, "bad database magic");
  const auto version = r.Get<std::uint16_t>();
  if (version != kDatabaseVersion) {
    throw Error(ErrorCode::kFormat,
                "unsupported database version " + std::to_string(version));
  }
  DatabaseParams p;
  const auto scheme = r.Get<std::uint8_t>();
  if (scheme > 1) throw Error(ErrorCode::kFormat, "unknown scheme tag");
  p.scheme = static_cast<Scheme>(scheme);
  p.dim = r.Get<std::uint32_t>();
  p.sigma_x = r.GetReal();
  p.tau = r.GetReal();
  p.seed = r.Get<std::uint64_t>();
  const auto rule_kind = r.Get<std::uint8_t>();
  if (rule_kind > 1) throw Error(ErrorCode::kFormat, "unknown rule tag");
  p.rule.kind = static_cast<TernaryRule::Kind>(rule_kind);
  p.rule.top_k = r.Get<std::uint32_t>();
  p.rule.lambda = r.GetReal();
  p.ambiguation_ratio = r.GetReal();
  p.intervals = r.Get<std::uint32_t>();
  p.subdivisions = r.Get<std::uint32_t>();
  p.code = r.GetText(r.Get<std::uint32_t>());
  const auto kind = r.Get<std::uint8_t>();
  if (kind > static_cast<std::uint8_t>(ProjectionKind::kPca)) {
    throw Error(ErrorCode::kFormat, "unknown projection tag");
  }
  const std::size_t l = r.Get<std::uint32_t>();
  if (p.dim == 0 || l == 0) throw Error(ErrorCode::kFormat, "zero dimension");
  std::optional<Projection> proj;
  if (kind == static_cast<std::uint8_t>(ProjectionKind::kIdentity)) {
    if (l != p.dim) throw Error(ErrorCode::kFormat, "identity projection must be square");
    proj = Projection::Identity(p.dim);
  } else {
    if (l * p.dim * 8 > r.remaining()) throw Error(ErrorCode::kFormat, "truncated data");
    Eigen::MatrixXd m(l, p.dim);
    for (std::size_t i = 0; i < l; ++i)
      for (std::size_t j = 0; j < p.dim; ++j) m(i, j) = r.GetReal();
    proj = Projection::FromMatrix(std::move(m), static_cast<ProjectionKind>(kind));
  }
  std::optional<EnrollmentDatabase> db;
  try {
    db.emplace(std::move(p), std::move(*proj));
  } catch (const Error& e) {
    throw Error(ErrorCode::kFormat, std::string("bad database header: ") + e.what());
  }
  const std::uint32_t count = r.Get<std::uint32_t>();
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::string id = r.GetText(r.Get<std::uint16_t>());
    if (id.empty() || db->Contains(id)) {
      throw Error(ErrorCode::kFormat, "empty or duplicate user id in database");
    }
    const auto payload = r.GetBytes(r.Get<std::uint32_t>());
    if (db->params_.scheme == Scheme::kSca) {
      ProtectedTemplate t = DeserializeTemplate(payload);
      if (t.codeword.size() != db->projection_.output_dim() ||
          t.projection_kind != db->projection_.kind()) {
        throw Error(ErrorCode::kFormat, "template inconsistent with header");
      }
      t.user_id = id;
      db->sca_.emplace(id, std::move(t));
    } else {
      ByteReader pr(payload);
      HdsRecord rec;
      rec.helpers.resize(pr.Get<std::uint32_t>());
      if (rec.helpers.size() != db->params_.dim) {
        throw Error(ErrorCode::kFormat, "helper count inconsistent with header");
      }
      for (auto& h : rec.helpers) {
        h = pr.Get<std::uint16_t>();
        if (h >= db->params_.subdivisions) {
          throw Error(ErrorCode::kFormat, "helper value out of range");
        }
      }
      rec.syndromes.resize(pr.Get<std::uint32_t>());
      if (rec.syndromes.size() != db->BlockCount()) {
        throw Error(ErrorCode::kFormat, "block count inconsistent with header");
      }
      for (auto& s : rec.syndromes) {
        s = pr.Get<std::uint32_t>();
        if (s >> db->code_->redundancy()) {
          throw Error(ErrorCode::kFormat, "syndrome out of range");
        }
      }
      if (pr.remaining() != 0) throw Error(ErrorCode::kFormat, "trailing record data");
      db->hds_.emplace(id, std::move(rec));
    }
    db->order_.push_back(id);
  }
  if (r.remaining() != 0) throw Error(ErrorCode::kFormat, "trailing database data");
  return std::move(*db);
}

void EnrollmentDatabase::Save(const std::string& path) const {
  const auto bytes = Serialize();
  WriteTextFile(path, std::string(bytes.begin(), bytes.end()));
}

EnrollmentDatabase EnrollmentDatabase::Load(const std::string& path) {
  const std::string text = ReadTextFile(path);
  return Deserialize(std::span(reinterpret_cast<const std::uint8_t*>(text.data()),
                               text.size()));
}

}  // namespace bioleak
