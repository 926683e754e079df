#include "metriq/params.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>

#include "metriq/errors.hpp"

namespace metriq {

struct ParamRegistry::Impl {
  mutable std::shared_mutex mu;
  std::map<std::string, bool, std::less<>> positive;
};

namespace {
constexpr std::string_view kPositiveReserved[] = {"q", "hbar", "Psi", "Pi", "Phi"};
}  // namespace

const std::vector<std::string>& metric_component_names() {
  static const std::vector<std::string> names = {"g00", "g01", "g02", "g03", "g11",
                                                 "g12", "g13", "g22", "g23", "g33"};
  return names;
}

ParamRegistry::ParamRegistry() : impl_(new Impl) {
  for (auto n : kPositiveReserved) impl_->positive.emplace(std::string(n), true);
  for (const auto& n : metric_component_names()) impl_->positive.emplace(n, false);
}

ParamRegistry& ParamRegistry::global() {
  static ParamRegistry instance;
  return instance;
}

void ParamRegistry::declare(std::string_view name, bool positive) {
  std::unique_lock lock(impl_->mu);
  auto it = impl_->positive.find(name);
  if (it != impl_->positive.end()) {
    if (it->second != positive) {
      throw Error("parameter '" + std::string(name) + "' already declared with different positivity");
    }
    return;
  }
  impl_->positive.emplace(std::string(name), positive);
}

bool ParamRegistry::is_positive(std::string_view name) const {
  std::shared_lock lock(impl_->mu);
  auto it = impl_->positive.find(name);
  return it != impl_->positive.end() && it->second;
}

bool ParamRegistry::is_declared(std::string_view name) const {
  std::shared_lock lock(impl_->mu);
  return impl_->positive.find(name) != impl_->positive.end();
}

std::vector<Param> ParamRegistry::all() const {
  std::shared_lock lock(impl_->mu);
  std::vector<Param> out;
  for (const auto& [n, p] : impl_->positive) out.push_back({n, p});
  return out;
}

bool ParamRegistry::is_reserved(std::string_view name) {
  for (auto n : kPositiveReserved) {
    if (n == name) return true;
  }
  for (const auto& n : metric_component_names()) {
    if (n == name) return true;
  }
  return false;
}

}  // namespace metriq
