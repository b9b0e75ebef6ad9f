#pragma once

#include <stdexcept>
#include <string>

namespace treelab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad parameters or malformed input (unknown generator, p == 0, ...).
struct UsageError : Error {
  using Error::Error;
};

// A window would exceed the configured vertex cap.
struct SizeError : Error {
  using Error::Error;
};

// A point needs more bits than LazyPoint::kMaxBits to be located.
struct PrecisionError : Error {
  using Error::Error;
};

// A co-induced coordinate or lift needed a coset outside the window.
struct WindowError : Error {
  using Error::Error;
};

}  // namespace treelab
