#pragma once

#include <gtest/gtest.h>

#include "cregf/error.hpp"

// Asserts that `stmt` throws cregf::Error with the given kind.
#define EXPECT_KIND(stmt, expected_kind)                                  \
  do {                                                                    \
    try {                                                                 \
      stmt;                                                               \
      ADD_FAILURE() << "expected " << ::cregf::to_string(expected_kind);  \
    } catch (const ::cregf::Error& e) {                                   \
      EXPECT_EQ(e.kind(), expected_kind) << e.what();                     \
    }                                                                     \
  } while (0)
