#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>

#include "trex/bitstring.hpp"
#include "trex/rng.hpp"
#include "trex/trevisan.hpp"

namespace trex {

// Randomized query interface (y, z) -> accept bit. Implementations keep no
// state across queries beyond the counter; any internal randomness is fresh
// per call. Counters are atomic; implementations carrying their own RNG are
// single-threaded per instance (parallel harnesses use one instance per
// trial).
class Distinguisher {
 public:
  virtual ~Distinguisher() = default;

  int query(const BitString& y, const BitString& z) {
    count_.fetch_add(1, std::memory_order_relaxed);
    return eval(y, z);
  }
  std::uint64_t queries() const {
    return count_.load(std::memory_order_relaxed);
  }
  void reset_queries() { count_.store(0, std::memory_order_relaxed); }

 private:
  virtual int eval(const BitString& y, const BitString& z) = 0;
  std::atomic<std::uint64_t> count_{0};
};

// Accepts exactly the extractor's own output: T(y, z) = [z == TR(f, y)].
// The strongest possible distinguisher; its advantage is 1 - 2^-m.
class ExactMatchDistinguisher : public Distinguisher {
 public:
  ExactMatchDistinguisher(BitString f, const ExtractorParams& p)
      : f_(std::move(f)), p_(&p) {}

 private:
  int eval(const BitString& y, const BitString& z) override {
    return extract(f_, y, *p_) == z ? 1 : 0;
  }
  BitString f_;
  const ExtractorParams* p_;
};

// Ignores z entirely (answers a nonconstant function of y alone); its true
// advantage is exactly 0, so reconstruction must fail against it.
class ZIgnoringDistinguisher : public Distinguisher {
 private:
  int eval(const BitString& y, const BitString&) override {
    return y.size() == 0 ? 0 : y.parity();
  }
};

// Wraps another distinguisher and flips its answer with probability
// flip_prob, fresh per query.
class NoisyDistinguisher : public Distinguisher {
 public:
  NoisyDistinguisher(Distinguisher& inner, double flip_prob, Rng rng)
      : inner_(&inner), flip_prob_(flip_prob), rng_(rng) {}

 private:
  int eval(const BitString& y, const BitString& z) override {
    const int v = inner_->query(y, z);
    return rng_.bernoulli(flip_prob_) ? 1 - v : v;
  }
  Distinguisher* inner_;
  double flip_prob_;
  Rng rng_;
};

// Randomized query interface j -> bit over codeword positions. Agreement
// with a word w, ag(O, w) = Pr over (uniform j, oracle coins) of O(j) = w_j,
// is estimated by sampling.
class ProbOracle {
 public:
  virtual ~ProbOracle() = default;

  int query(std::uint64_t j) {
    count_.fetch_add(1, std::memory_order_relaxed);
    return eval(j);
  }
  std::uint64_t queries() const {
    return count_.load(std::memory_order_relaxed);
  }
  void reset_queries() { count_.store(0, std::memory_order_relaxed); }

 private:
  virtual int eval(std::uint64_t j) = 0;
  std::atomic<std::uint64_t> count_{0};
};

// Deterministic oracle reading off a fixed word.
class WordOracle : public ProbOracle {
 public:
  explicit WordOracle(BitString w) : w_(std::move(w)) {}

 private:
  int eval(std::uint64_t j) override {
    return w_.get(static_cast<std::size_t>(j));
  }
  BitString w_;
};

// Reads a fixed word but flips each answer independently with probability
// flip_prob; repeated queries to the same position draw fresh coins (the
// probabilistic-oracle semantics the decoder must survive).
class NoisyWordOracle : public ProbOracle {
 public:
  NoisyWordOracle(BitString w, double flip_prob, Rng rng)
      : w_(std::move(w)), flip_prob_(flip_prob), rng_(rng) {}

 private:
  int eval(std::uint64_t j) override {
    const int v = w_.get(static_cast<std::size_t>(j));
    return rng_.bernoulli(flip_prob_) ? 1 - v : v;
  }
  BitString w_;
  double flip_prob_;
  Rng rng_;
};

// Answers every query with a fresh uniform bit; agreement 1/2 with
// everything.
class RandomBitOracle : public ProbOracle {
 public:
  explicit RandomBitOracle(Rng rng) : rng_(rng) {}

 private:
  int eval(std::uint64_t) override { return static_cast<int>(rng_.next() & 1); }
  Rng rng_;
};

class FunctionOracle : public ProbOracle {
 public:
  explicit FunctionOracle(std::function<int(std::uint64_t)> fn)
      : fn_(std::move(fn)) {}

 private:
  int eval(std::uint64_t j) override { return fn_(j); }
  std::function<int(std::uint64_t)> fn_;
};

// Restriction of an oracle over [nbar] to one inner-code block: positions
// j = (block << s) | mask for mask in [0, 2^s).
class BlockOracle : public ProbOracle {
 public:
  BlockOracle(ProbOracle& base, std::uint64_t block, int s)
      : base_(&base), block_(block), s_(s) {}

 private:
  int eval(std::uint64_t mask) override {
    return base_->query((block_ << s_) | mask);
  }
  ProbOracle* base_;
  std::uint64_t block_;
  int s_;
};

/// The Hadamard codeword of x: bit a = <x, a> mod 2, length 2^s.
inline BitString hadamard_word(std::uint32_t x, int s) {
  BitString w(std::size_t{1} << s);
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << s); ++a)
    if (parity64(x & a)) w.set(a, 1);
  return w;
}

/// Monte-Carlo estimate of ag(O, w) over uniform positions.
inline double estimate_agreement(ProbOracle& O, const BitString& w,
                                 std::uint64_t samples, Rng& rng) {
  if (samples == 0) throw std::invalid_argument("agreement with 0 samples");
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const std::uint64_t j = rng.below(w.size());
    if (O.query(j) == w.get(j)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(samples);
}

}  // namespace trex
