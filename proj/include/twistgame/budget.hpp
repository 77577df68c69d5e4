#pragma once

#include <chrono>
#include <cstddef>
#include <cstdlib>
#include <string>

#include "error.hpp"

namespace twistgame {

// Caps shared by every closure-grown enumeration.
struct Budget {
  std::size_t max_results = 1'000'000;
  std::chrono::milliseconds max_time{60'000};

  // TWISTGAME_BUDGET_SECS overrides the time cap.
  static Budget from_env() {
    Budget b;
    if (const char* s = std::getenv("TWISTGAME_BUDGET_SECS")) {
      char* end = nullptr;
      double secs = std::strtod(s, &end);
      if (end != s && secs > 0) b.max_time = std::chrono::milliseconds(static_cast<long long>(secs * 1000));
    }
    return b;
  }
};

class BudgetClock {
public:
  explicit BudgetClock(const Budget& b) : budget_(b), start_(std::chrono::steady_clock::now()) {}

  void check(std::size_t results, const char* what) const {
    if (results > budget_.max_results)
      fail(ErrorCode::BudgetExceeded, std::string(what) + ": more than " + std::to_string(budget_.max_results) +
                                          " results (partial data discarded)");
    if (std::chrono::steady_clock::now() - start_ > budget_.max_time)
      fail(ErrorCode::BudgetExceeded, std::string(what) + ": time cap of " +
                                          std::to_string(budget_.max_time.count()) + " ms hit after " +
                                          std::to_string(results) + " results");
  }

private:
  Budget budget_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace twistgame
