#include "eigenpro/log.hpp"

#include <atomic>
#include <iostream>

namespace eigenpro {
namespace {
std::atomic<bool> warnings_enabled{true};
}

void warn(std::string_view message) {
  if (warnings_enabled.load()) std::cerr << "warning: " << message << '\n';
}

void set_warnings_enabled(bool enabled) { warnings_enabled.store(enabled); }

}  // namespace eigenpro
