#include "seedtrace/diagnostics.hpp"

#include <iostream>
#include <utility>

namespace seedtrace {

namespace {

WarningSink& sink() {
  static WarningSink s;
  return s;
}

}  // namespace

WarningSink set_warning_sink(WarningSink s) { return std::exchange(sink(), std::move(s)); }

void warn(std::string_view message) {
  if (sink()) {
    sink()(message);
  } else {
    std::cerr << "seedtrace: warning: " << message << '\n';
  }
}

}  // namespace seedtrace
