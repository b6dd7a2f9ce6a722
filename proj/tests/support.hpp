#pragma once

#include <doctest.h>

#include <cmath>
#include <functional>
#include <string>

#include "lapkit/error.hpp"

inline std::string cases_path(const std::string& file) { return std::string(LAPKIT_CASES_DIR) + "/" + file; }

inline void expect_error(lapkit::ErrorCode code, const std::function<void()>& fn) {
  try {
    fn();
    FAIL("expected " << lapkit::error_name(code));
  } catch (const lapkit::Error& e) {
    CHECK_MESSAGE(e.code() == code, e.what());
  }
}

inline double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }
