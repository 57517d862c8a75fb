#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <csignal>
#include <set>

#include "binar/core.hpp"
#include "binar/oracle.hpp"

using namespace binar;

namespace {

const UnsignedCodec<std::uint32_t> kNybble(4);
const std::vector<std::uint32_t> kPaperInput{0xB, 0x4, 0x0, 0x0, 0x7, 0xA, 0xC, 0xE};

// Runs fn in a child process and reports whether it aborted.
template <class F>
bool aborts(F fn) {
  const pid_t pid = fork();
  if (pid == 0) {
    std::signal(SIGABRT, SIG_DFL);
    if (std::freopen("/dev/null", "w", stderr) == nullptr) _exit(2);
    fn();
    _exit(0);
  }
  int status = 0;
  waitpid(pid, &status, 0);
  return WIFSIGNALED(status) && WTERMSIG(status) == SIGABRT;
}

}  // namespace

TEST_CASE("partition reproduces the nybble illustration") {
  Metrics m;
  auto v = kPaperInput;
  auto r = partition(std::span(v), {0, 7, 0}, kNybble, m);
  CHECK(v == std::vector<std::uint32_t>{0x7, 0x4, 0x0, 0x0, 0xA, 0xC, 0xE, 0xB});
  CHECK(r.split == 4);
  CHECK_FALSE(r.pass_through);
  CHECK(m.bit_extractions == 8);
  CHECK(m.swaps == 4);

  std::vector<std::uint32_t> lower{0x7, 0x4, 0x0, 0x0};
  r = partition(std::span(lower), {0, 3, 1}, kNybble, m);
  CHECK(lower == std::vector<std::uint32_t>{0x0, 0x0, 0x4, 0x7});
  CHECK(r.split == 2);

  std::vector<std::uint32_t> upper{0xA, 0xC, 0xE, 0xB};
  r = partition(std::span(upper), {0, 3, 1}, kNybble, m);
  CHECK(upper == std::vector<std::uint32_t>{0xA, 0xB, 0xE, 0xC});
  CHECK(r.split == 2);
}

TEST_CASE("partition pass-through on either side") {
  Metrics m;
  std::vector<std::uint32_t> zeros{0, 0, 0};
  auto r = partition(std::span(zeros), {0, 2, 0}, kNybble, m);
  CHECK(zeros == std::vector<std::uint32_t>{0, 0, 0});
  CHECK(r.split == 3);
  CHECK(r.pass_through);
  CHECK(m.swaps == 0);

  std::vector<std::uint32_t> ones{0x8, 0x9, 0xF};
  r = partition(std::span(ones), {0, 2, 0}, kNybble, m);
  CHECK(r.split == 0);
  CHECK(r.pass_through);
}

TEST_CASE("partition only touches its range and splits by the bit") {
  oracle::Mt19937 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::uint32_t> v(1 + rng() % 64);
    for (auto& x : v) x = rng() & 0xFF;
    const auto before = v;
    const index_t n = static_cast<index_t>(v.size());
    const index_t lo = rng() % n;
    const index_t hi = lo + static_cast<index_t>(rng() % (n - lo));
    const unsigned pos = rng() % 8;
    Metrics m;
    const UnsignedCodec<std::uint32_t> codec(8);
    const auto r = partition(std::span(v), {lo, hi, pos}, codec, m);

    REQUIRE(r.split >= lo);
    REQUIRE(r.split <= hi + 1);
    CHECK(r.pass_through == (r.split == lo || r.split == hi + 1));
    for (index_t i = 0; i < n; ++i) {
      if (i < lo || i > hi) {
        REQUIRE(v[i] == before[i]);
      } else {
        REQUIRE(codec.bit_at(v[i], pos) == (i >= r.split));
      }
    }
    CHECK(std::is_permutation(v.begin(), v.end(), before.begin()));
    CHECK(m.bit_extractions == static_cast<std::uint64_t>(hi - lo + 1));
    CHECK(m.swaps <= m.bit_extractions);
  }
}

TEST_CASE("partition contract violations abort") {
  std::vector<std::uint32_t> v{1, 2, 3};
  CHECK(aborts([&] {
    Metrics m;
    partition(std::span(v), {0, 2, 4}, kNybble, m);
  }));
  CHECK(aborts([&] {
    Metrics m;
    partition(std::span(v), {1, 3, 0}, kNybble, m);
  }));
  CHECK(aborts([&] {
    Metrics m;
    partition(std::span(v), {2, 1, 0}, kNybble, m);
  }));
}

TEST_CASE("sort examples") {
  auto v = kPaperInput;
  sort(v, kNybble);
  CHECK(v == std::vector<std::uint32_t>{0x0, 0x0, 0x4, 0x7, 0xA, 0xB, 0xC, 0xE});

  std::vector<std::uint8_t> small{3, 1, 2};
  sort(small, UnsignedCodec<std::uint8_t>{});
  CHECK(small == std::vector<std::uint8_t>{1, 2, 3});

  std::vector<std::uint32_t> one{5};
  CHECK(sort(one, kNybble) == Metrics{});
  CHECK(one == std::vector<std::uint32_t>{5});

  std::vector<std::uint32_t> none;
  CHECK(sort(none, kNybble) == Metrics{});
}

TEST_CASE("binar_sort_range handles sub-ranges and base cases") {
  std::vector<std::uint32_t> v{9, 3, 7, 1, 0};
  Metrics m;
  binar_sort_range(std::span(v), {1, 3, 0}, UnsignedCodec<std::uint32_t>(4), m);
  CHECK(v == std::vector<std::uint32_t>{9, 1, 3, 7, 0});

  std::vector<std::uint32_t> single{5};
  for (unsigned pos : {0u, 2u, 4u}) {
    Metrics s;
    binar_sort_range(std::span(single), {0, 0, pos}, kNybble, s);
    CHECK(single == std::vector<std::uint32_t>{5});
    CHECK(s.bit_extractions == 0);
  }

  std::vector<std::uint32_t> empty;
  Metrics e;
  binar_sort_range(std::span(empty), {0, -1, 0}, kNybble, e);
  CHECK(e.bit_extractions == 0);
}

TEST_CASE("binar_sort_range reports each partition to the observer") {
  auto v = kPaperInput;
  Metrics m;
  std::vector<std::pair<SortRange, PartitionResult>> seen;
  const PartitionObserver observer = [&](const SortRange& r, const PartitionResult& p) { seen.emplace_back(r, p); };
  binar_sort_range(std::span(v), {0, 7, 0}, kNybble, m, &observer);
  REQUIRE_FALSE(seen.empty());
  CHECK(seen.front().first == SortRange{0, 7, 0});
  CHECK(seen.front().second.split == 4);
  // Depth-first: [0,3] at bit 2 comes next.
  CHECK(seen[1].first == SortRange{0, 3, 1});
  CHECK(seen.size() < m.recursive_calls);
  for (const auto& [range, part] : seen) {
    CHECK(range.size() > 1);
    CHECK(range.pos < 4u);
    CHECK(part.split >= range.lower);
    CHECK(part.split <= range.upper + 1);
  }
}

TEST_CASE("sort agrees with the merge-sort oracle on 1000 random arrays") {
  oracle::Mt19937 rng(42);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::uint32_t> v(rng() % 2049);
    for (auto& x : v) x = rng();
    const auto expected = oracle::reference_sort(std::span<const std::uint32_t>(v));
    const Metrics m = sort(v, UnsignedCodec<std::uint32_t>{});
    REQUIRE(v == expected);
    CHECK(m.bit_extractions <= 32 * v.size());
    CHECK(m.swaps <= m.bit_extractions);
    CHECK(m.max_depth <= 33);
  }
}

TEST_CASE("work bound at 10^5 random 32-bit values") {
  oracle::Mt19937 rng(1);
  std::vector<std::uint32_t> v(100'000);
  for (auto& x : v) x = rng();
  const Metrics m = sort(v, UnsignedCodec<std::uint32_t>{});
  CHECK(std::is_sorted(v.begin(), v.end()));
  CHECK(m.bit_extractions <= 32u * 100'000u);
  CHECK(m.swaps <= m.bit_extractions);
  CHECK(m.max_depth <= 33);
}

TEST_CASE("duplicates and narrow keys hit the width base case") {
  std::vector<std::uint32_t> v(50, 0xA);
  v.push_back(0x3);
  const Metrics m = sort(v, kNybble);
  CHECK(v.front() == 0x3);
  CHECK(std::all_of(v.begin() + 1, v.end(), [](auto x) { return x == 0xA; }));
  CHECK(m.max_depth == 5);
  CHECK(m.bit_extractions <= 4 * v.size());
}

TEST_CASE("bit_extractions does not depend on the input permutation") {
  std::vector<std::uint8_t> keys{0x03, 0x11, 0x5C, 0x80, 0xA7, 0xFE};
  std::sort(keys.begin(), keys.end());
  std::set<std::uint64_t> counts;
  int perms = 0;
  do {
    auto v = keys;
    counts.insert(sort(v, UnsignedCodec<std::uint8_t>{}).bit_extractions);
    ++perms;
  } while (std::next_permutation(keys.begin(), keys.end()));
  CHECK(perms == 720);
  CHECK(counts.size() == 1);
}

TEST_CASE("level observer reproduces the nybble summary") {
  auto v = kPaperInput;
  std::vector<std::pair<unsigned, std::vector<std::pair<index_t, index_t>>>> levels;
  const Metrics m = sort_with_observer(v, kNybble, [&](unsigned pos, auto groups) {
    levels.emplace_back(pos, std::vector(groups.begin(), groups.end()));
  });
  using B = std::vector<std::pair<index_t, index_t>>;
  REQUIRE(levels.size() == 4);
  CHECK(levels[0].second == B{{0, 3}, {4, 7}});
  CHECK(levels[1].second == B{{0, 1}, {2, 3}, {4, 5}, {6, 7}});
  // 4 (0100) and 7 (0111) differ at the third bit, A (1010) and B (1011) at
  // the fourth, so both pairs split before the walk ends.
  CHECK(levels[2].second == B{{0, 1}, {2, 2}, {3, 3}, {4, 5}, {6, 6}, {7, 7}});
  CHECK(levels[3].second == B{{0, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}, {6, 6}, {7, 7}});
  CHECK(v == std::vector<std::uint32_t>{0x0, 0x0, 0x4, 0x7, 0xA, 0xB, 0xC, 0xE});

  auto w = kPaperInput;
  CHECK(m == sort(w, kNybble));
}

TEST_CASE("level observer matches sort output and counters on random input") {
  oracle::Mt19937 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::uint16_t> v(rng() % 300);
    for (auto& x : v) x = static_cast<std::uint16_t>(rng() % (trial % 2 ? 64 : 65536));
    auto w = v;
    const Metrics a = sort(v, UnsignedCodec<std::uint16_t>{});
    const Metrics b = sort_with_observer(w, UnsignedCodec<std::uint16_t>{}, nullptr);
    REQUIRE(v == w);
    CHECK(a == b);
  }
}

TEST_CASE("metrics merge adds counts and keeps the deepest level") {
  Metrics a{10, 3, 5, 4, 0};
  const Metrics b{7, 2, 1, 9, 2};
  a += b;
  CHECK(a == Metrics{17, 5, 6, 9, 2});
}
