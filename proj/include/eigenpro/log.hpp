#pragma once

#include <string_view>

namespace eigenpro {

/// Warnings go to stderr unless silenced (tests, --quiet).
void warn(std::string_view message);
void set_warnings_enabled(bool enabled);

}  // namespace eigenpro
