#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "opz/parallel.hpp"

namespace opz {
namespace {

class ThreadEnv : public ::testing::Test {
 protected:
  void SetUp() override {
    if (const char* v = std::getenv("OPZ_THREADS")) saved_ = v;
  }
  void TearDown() override {
    if (saved_.empty()) {
      unsetenv("OPZ_THREADS");
    } else {
      setenv("OPZ_THREADS", saved_.c_str(), 1);
    }
  }
  std::string saved_;
};

TEST_F(ThreadEnv, ThreadCountFromEnvironment) {
  setenv("OPZ_THREADS", "3", 1);
  EXPECT_EQ(thread_count(), 3);
  setenv("OPZ_THREADS", "0", 1);
  EXPECT_GE(thread_count(), 1);
  setenv("OPZ_THREADS", "2x", 1);
  EXPECT_GE(thread_count(), 1);
  unsetenv("OPZ_THREADS");
  EXPECT_GE(thread_count(), 1);
}

TEST_F(ThreadEnv, VisitsEveryIndexOnce) {
  for (const char* threads : {"1", "4"}) {
    setenv("OPZ_THREADS", threads, 1);
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), [&](std::size_t i) { ++hits[i]; });
    for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
}

TEST_F(ThreadEnv, RethrowsLowestFailingIndex) {
  setenv("OPZ_THREADS", "4", 1);
  try {
    parallel_for(200, [](std::size_t i) {
      if (i % 37 == 5) throw std::runtime_error(std::to_string(i));
    });
    FAIL() << "expected an exception";
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "5");
  }
}

TEST_F(ThreadEnv, EmptyRange) {
  bool called = false;
  parallel_for(0, [&](std::size_t) { called = true; });
  EXPECT_FALSE(called);
}

}  // namespace
}  // namespace opz
