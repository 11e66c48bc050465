#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "levinlab/numeric.hpp"

namespace levin {

// Raised when an operation exceeds its step budget.
class Divergence : public std::runtime_error {
 public:
  explicit Divergence(const std::string& what) : std::runtime_error(what) {}
};

// Step counter shared by every handle taking part in one computation.
struct Budget {
  Nat limit;
  Nat used = 0;

  explicit Budget(Nat l) : limit(l) {}
  void charge(Nat steps = 1);
};

// An infinite name. Cells are naturals, except for rational-valued sources
// (pre-reals and sequences of them) whose cells are exact rationals.
class Source {
 public:
  virtual ~Source() = default;
  virtual bool rational() const { return false; }
  virtual Nat nat(Nat index);
  virtual Rational rat(Nat index);
};

class FunctionSource final : public Source {
 public:
  explicit FunctionSource(std::function<Nat(Nat)> f) : f_(std::move(f)) {}
  Nat nat(Nat index) override { return f_(index); }

 private:
  std::function<Nat(Nat)> f_;
};

class RationalFunctionSource final : public Source {
 public:
  explicit RationalFunctionSource(std::function<Rational(Nat)> f) : f_(std::move(f)) {}
  bool rational() const override { return true; }
  Rational rat(Nat index) override { return f_(index); }

 private:
  std::function<Rational(Nat)> f_;
};

struct QueryRecord {
  Nat index;
  Nat value;  // the cell, or its fingerprint for rational cells

  friend bool operator==(const QueryRecord&, const QueryRecord&) = default;
};

// Prefix-query access to a source. Every query is logged and charged to the
// budget; a handle must not be shared between threads.
class StreamHandle {
 public:
  StreamHandle(std::shared_ptr<Source> source, std::shared_ptr<Budget> budget);

  Nat query(Nat index);
  Rational query_rational(Nat index);
  void tick(Nat steps = 1) { budget_->charge(steps); }

  bool rational() const { return source_->rational(); }
  const std::vector<QueryRecord>& log() const { return log_; }
  // One past the largest index read so far: the length of the prefix used.
  Nat use() const { return use_; }
  const std::shared_ptr<Budget>& budget() const { return budget_; }

 private:
  std::shared_ptr<Source> source_;
  std::shared_ptr<Budget> budget_;
  std::vector<QueryRecord> log_;
  Nat use_ = 0;
};

using Handle = std::shared_ptr<StreamHandle>;

Handle open(std::shared_ptr<Source> source, std::shared_ptr<Budget> budget);

// Exposes the cells of an underlying handle starting at an offset; reads are
// logged on the underlying handle.
class OffsetSource final : public Source {
 public:
  OffsetSource(Handle base, Nat offset) : base_(std::move(base)), offset_(offset) {}
  bool rational() const override { return base_->rational(); }
  Nat nat(Nat index) override { return base_->query(index + offset_); }
  Rational rat(Nat index) override { return base_->query_rational(index + offset_); }

 private:
  Handle base_;
  Nat offset_;
};

}  // namespace levin
