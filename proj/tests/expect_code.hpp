#pragma once

#include <gtest/gtest.h>

#include "weightred/error.hpp"

/// Asserts that `stmt` throws weightred::Error carrying `code`.
#define EXPECT_ERROR_CODE(stmt, expected)                                       \
  do {                                                                          \
    bool thrown_ = false;                                                       \
    try {                                                                       \
      stmt;                                                                     \
    } catch (const ::weightred::Error& e_) {                                    \
      thrown_ = true;                                                           \
      EXPECT_EQ(::weightred::to_string(e_.code()), ::weightred::to_string(expected)); \
    }                                                                           \
    EXPECT_TRUE(thrown_) << #stmt " did not throw";                             \
  } while (0)
