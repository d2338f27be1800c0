#pragma once

namespace critpd {

/// Keeps freed large buffers in the heap instead of returning them to the OS
/// after every iteration (glibc only; a no-op elsewhere). Call once from main.
void tune_allocator();

}  // namespace critpd
