#include "axelrod_lab/model.hpp"

#include <string>

#include "axelrod_lab/errors.hpp"

namespace axelrod {

void ModelParams::validate() const {
  if (length < 3) {
    throw ParameterError("ring length must be at least 3, got " + std::to_string(length));
  }
  if (opinions.empty()) throw ParameterError("at least one feature is required");
  for (std::size_t i = 0; i < opinions.size(); ++i) {
    if (opinions[i] < 2) {
      throw ParameterError("feature " + std::to_string(i + 1) +
                           " needs at least 2 opinions, got " + std::to_string(opinions[i]));
    }
  }
}

CultureState::CultureState(std::size_t length, int features)
    : length_(length),
      features_(features),
      opinions_(length * static_cast<std::size_t>(features), 1) {}

CultureState make_state(const ModelParams& params, std::span<const Opinion> opinions) {
  params.validate();
  const int f = params.features();
  if (opinions.size() != params.length * static_cast<std::size_t>(f)) {
    throw ParameterError("expected " + std::to_string(params.length * static_cast<std::size_t>(f)) +
                         " opinions, got " + std::to_string(opinions.size()));
  }
  CultureState state(params.length, f);
  for (SiteIndex x = 0; x < params.length; ++x) {
    for (FeatureIndex i = 0; i < f; ++i) {
      const Opinion v = opinions[x * static_cast<std::size_t>(f) + static_cast<std::size_t>(i)];
      if (v < 1 || v > params.opinions[static_cast<std::size_t>(i)]) {
        throw ParameterError("opinion out of range at site " + std::to_string(x) + ", feature " +
                             std::to_string(i + 1));
      }
      state.set_opinion(x, i, v);
    }
  }
  return state;
}

CultureState init_state(const ModelParams& params, RandomStream& rng) {
  params.validate();
  const int f = params.features();
  CultureState state(params.length, f);
  for (SiteIndex x = 0; x < params.length; ++x) {
    for (FeatureIndex i = 0; i < f; ++i) {
      const auto q = static_cast<std::uint64_t>(params.opinions[static_cast<std::size_t>(i)]);
      state.set_opinion(x, i, static_cast<Opinion>(rng.below(q) + 1));
    }
  }
  return state;
}

int hamming(const CultureState& state, SiteIndex x, SiteIndex y) {
  const auto a = state.column(x);
  const auto b = state.column(y);
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

double interaction_rate(int disagreements, int features) {
  if (features < 1 || disagreements < 0 || disagreements > features) {
    throw DomainError("interaction_rate: need 0 <= j <= F, got j = " +
                      std::to_string(disagreements) + ", F = " + std::to_string(features));
  }
  if (disagreements == 0) return 0.0;
  return 0.5 * acceptance_threshold(disagreements, features);
}

double acceptance_threshold(int disagreements, int features) {
  if (disagreements <= 0 || disagreements >= features) return 0.0;
  return static_cast<double>(features - disagreements) /
         (static_cast<double>(disagreements) * static_cast<double>(features));
}

}  // namespace axelrod
