#pragma once

#include <memory>
#include <span>

#include "polar16/arikan.hpp"
#include "polar16/kernel.hpp"

namespace polar16 {

// Streaming view of one kernel block: reset with l channel LLRs, then
// alternate next_llr() / decide() through phases 0..l-1. Implementations are
// single-owner mutable; distinct instances may run in parallel.
class KernelProcessor {
 public:
  virtual ~KernelProcessor() = default;

  virtual int kernel_size() const = 0;
  virtual int phase() const = 0;
  virtual void reset(std::span<const double> y) = 0;
  virtual double next_llr() = 0;
  virtual void decide(int bit) = 0;
  virtual std::unique_ptr<KernelProcessor> clone() const = 0;

  virtual const OpCounter& ops() const = 0;
  virtual void zero_ops() = 0;
};

enum class ProcessorKind {
  kAuto,     // fast path for the shipped 16x16 kernels, generic otherwise
  kGeneric,  // window-enumeration baseline, any kernel
  kFast,     // hand-scheduled k1/k2 processors
};

std::unique_ptr<KernelProcessor> make_processor(const Kernel& k, ProcessorKind kind);

}  // namespace polar16
