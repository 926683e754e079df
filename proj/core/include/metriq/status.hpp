#pragma once

#include <string_view>

namespace metriq {

enum class Status { pass, fail, skip, degenerate };

constexpr std::string_view to_string(Status s) {
  switch (s) {
    case Status::pass: return "PASS";
    case Status::fail: return "FAIL";
    case Status::skip: return "SKIP";
    case Status::degenerate: return "DEGENERATE";
  }
  return "?";
}

}  // namespace metriq
