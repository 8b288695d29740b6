#pragma once

namespace signednet {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace signednet
