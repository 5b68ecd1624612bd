#include "mott/common.hpp"

#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace mott {

namespace {

template <typename T>
T pairwise_impl(std::span<const T> v) {
  if (v.empty()) return T{};
  if (v.size() <= 8) {
    T s{};
    for (const T& x : v) s += x;
    return s;
  }
  size_t half = v.size() / 2;
  return pairwise_impl(v.subspan(0, half)) + pairwise_impl(v.subspan(half));
}

}  // namespace

double pairwise_sum(std::span<const double> v) { return pairwise_impl(v); }
complexd pairwise_sum(std::span<const complexd> v) { return pairwise_impl(v); }

std::string fmt_g(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

LogLevel log_level() {
  static LogLevel lvl = [] {
    const char* e = std::getenv("MOTT_LOG");
    if (!e) return LogLevel::Warn;
    if (std::strcmp(e, "error") == 0) return LogLevel::Error;
    if (std::strcmp(e, "warn") == 0) return LogLevel::Warn;
    if (std::strcmp(e, "info") == 0) return LogLevel::Info;
    if (std::strcmp(e, "debug") == 0) return LogLevel::Debug;
    return LogLevel::Warn;
  }();
  return lvl;
}

void logf(LogLevel lvl, const char* fmt, ...) {
  if (static_cast<int>(lvl) > static_cast<int>(log_level())) return;
  static const char* names[] = {"ERROR", "WARN", "INFO", "DEBUG"};
  std::fprintf(stderr, "[%s] ", names[static_cast<int>(lvl)]);
  va_list args;
  va_start(args, fmt);
  std::vfprintf(stderr, fmt, args);
  va_end(args);
  std::fputc('\n', stderr);
}

}  // namespace mott
