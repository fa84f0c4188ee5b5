/*
Encoder and SC/SCL decoders for codes built from m levels of an l x l kernel,
with a pluggable kernel processor and optional CRC-aided list selection.
*/
#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "polar16/processor.hpp"

namespace polar16 {

struct CrcSpec {
  int width = 8;
  uint32_t poly = 0x07;  // x^8 + x^2 + x + 1, leading term implicit
};

// Remainder of bits * x^width mod the generator; MSB-first, zero initial state.
uint32_t crc_remainder(std::span<const uint8_t> bits, const CrcSpec& crc);
std::vector<uint8_t> crc_append(std::span<const uint8_t> bits, const CrcSpec& crc);
bool crc_check(std::span<const uint8_t> bits, const CrcSpec& crc);

struct CodeSpec {
  Kernel kernel;
  int m = 1;
  int n = 0;                  // l^m
  int k = 0;                  // payload bits
  std::vector<int> frozen;    // ascending; |frozen| = n - k - crc bits
  std::vector<int> info;      // ascending complement of frozen
  std::optional<CrcSpec> crc;

  // Validates sizes and derives the info set. Frozen values are all-zero.
  static CodeSpec create(Kernel kernel, int m, int k, std::vector<int> frozen,
                         std::optional<CrcSpec> crc = std::nullopt);
};

// Explicit generator: digit-reversal permutation times the Kronecker power.
BinMatrix transform_matrix(const Kernel& k, int m);

// c = u G_m evaluated through the recursive block structure.
std::vector<uint8_t> transform_encode(const Kernel& k, int m, std::span<const uint8_t> u);

// Payload (k bits) -> codeword; CRC bits are appended internally when configured.
std::vector<uint8_t> encode(const CodeSpec& spec, std::span<const uint8_t> payload);

// Walks the m-level recursion phase by phase: next_llr() produces the LLR of
// the current input symbol, decide() fixes it and pushes re-encoded blocks
// down. Deep-copyable for list decoding.
class DecoderTree {
 public:
  DecoderTree(const Kernel& kernel, int m, ProcessorKind kind,
              std::shared_ptr<const std::vector<double>> channel);
  DecoderTree(const DecoderTree& other);
  DecoderTree& operator=(const DecoderTree& other);
  DecoderTree(DecoderTree&&) noexcept = default;
  DecoderTree& operator=(DecoderTree&&) noexcept = default;

  int size() const { return n_; }
  int phase() const { return phase_; }
  double next_llr();
  void decide(int bit);
  uint64_t ops() const;   // total counted processor operations in this tree
  void zero_ops();

 private:
  struct Node {
    int level = 1;
    std::unique_ptr<KernelProcessor> proc;
    std::vector<Node> children;
    std::vector<double> y;
    std::span<const double> channel;
    std::vector<uint8_t> bits;
    bool open = false;

    Node() = default;
    Node(const Node& other);
    Node& operator=(const Node& other);
    Node(Node&&) noexcept = default;
    Node& operator=(Node&&) noexcept = default;

    double next_llr(int l);
    void decide(int bit, int l, const std::vector<uint64_t>& rows);
    uint64_t ops() const;
    void zero_ops();
  };

  Node build_node(int level, std::span<const double> segment);

  int l_ = 0;
  int n_ = 0;
  int phase_ = 0;
  std::vector<uint64_t> rows_;  // kernel rows for block re-encoding
  std::shared_ptr<const WindowPlan> plan_;  // shared by generic processors
  ProcessorKind kind_ = ProcessorKind::kAuto;
  Kernel kernel_;
  std::shared_ptr<const std::vector<double>> channel_;
  Node root_;
};

struct DecodeResult {
  std::vector<uint8_t> u;         // all n input symbols
  std::vector<uint8_t> codeword;  // re-encoded decision
  std::vector<uint8_t> payload;   // k payload bits
  double score = 0.0;
  bool crc_ok = false;            // true when no CRC is configured
  uint64_t kernel_ops = 0;        // processor work spent on this call
  int final_paths = 1;            // list population when decoding finished
};

DecodeResult sc_decode(const CodeSpec& spec, std::span<const double> llr,
                       ProcessorKind kind = ProcessorKind::kAuto);

// List decoder: keeps at most list_size paths by score, forking at info
// phases; returns the best CRC-passing path, or the best path overall when
// none passes (or no CRC is configured).
DecodeResult scl_decode(const CodeSpec& spec, std::span<const double> llr, int list_size,
                        ProcessorKind kind = ProcessorKind::kAuto);

// Genie-aided SC over the all-zero input: flags phases whose sign decision
// would have been wrong, correcting each before proceeding.
std::vector<uint8_t> genie_sc_errors(const Kernel& kernel, int m, std::span<const double> llr,
                                     ProcessorKind kind = ProcessorKind::kAuto);

}  // namespace polar16
