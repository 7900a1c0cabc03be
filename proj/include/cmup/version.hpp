#pragma once

namespace cmup {

inline constexpr const char* artifact_version = "0.1.0";

} // namespace cmup
