#include "polar16/codec.hpp"

#include <algorithm>
#include <stdexcept>

#include "polar16/fast16.hpp"
#include "polar16/winproc.hpp"

namespace polar16 {

namespace {

std::unique_ptr<KernelProcessor> make_proc(const Kernel& k, ProcessorKind kind,
                                           std::shared_ptr<const WindowPlan>& plan) {
  if (kind == ProcessorKind::kAuto || kind == ProcessorKind::kFast) {
    if (k.l == 16) {
      static const BinMatrix m1 = k1().matrix;
      static const BinMatrix m2 = k2().matrix;
      if (k.matrix == m1) return std::make_unique<Fast16K1>();
      if (k.matrix == m2) return std::make_unique<Fast16K2>();
    }
    if (kind == ProcessorKind::kFast)
      throw std::invalid_argument("fast processor exists only for the k1/k2 kernels");
  }
  if (!plan) plan = std::make_shared<const WindowPlan>(window_plan(k));
  return std::make_unique<GenericKernelProcessor>(plan);
}

}  // namespace

std::unique_ptr<KernelProcessor> make_processor(const Kernel& k, ProcessorKind kind) {
  std::shared_ptr<const WindowPlan> plan;
  return make_proc(k, kind, plan);
}

uint32_t crc_remainder(std::span<const uint8_t> bits, const CrcSpec& crc) {
  if (crc.width < 1 || crc.width > 32) throw std::invalid_argument("crc: bad width");
  const uint32_t mask = (crc.width == 32) ? 0xffffffffu : ((uint32_t{1} << crc.width) - 1);
  uint32_t reg = 0;
  for (uint8_t b : bits) {
    const uint32_t fb = ((reg >> (crc.width - 1)) ^ b) & 1u;
    reg = (reg << 1) & mask;
    if (fb) reg ^= crc.poly & mask;
  }
  return reg;
}

std::vector<uint8_t> crc_append(std::span<const uint8_t> bits, const CrcSpec& crc) {
  std::vector<uint8_t> out(bits.begin(), bits.end());
  const uint32_t rem = crc_remainder(bits, crc);
  for (int i = crc.width - 1; i >= 0; --i) out.push_back(static_cast<uint8_t>((rem >> i) & 1u));
  return out;
}

bool crc_check(std::span<const uint8_t> bits, const CrcSpec& crc) {
  if (static_cast<int>(bits.size()) < crc.width) return false;
  return crc_remainder(bits, crc) == 0;
}

CodeSpec CodeSpec::create(Kernel kernel, int m, int k, std::vector<int> frozen,
                          std::optional<CrcSpec> crc) {
  if (m < 1) throw std::invalid_argument("CodeSpec: m must be >= 1");
  int n = 1;
  for (int i = 0; i < m; ++i) {
    if (n > (1 << 24) / kernel.l) throw std::invalid_argument("CodeSpec: n too large");
    n *= kernel.l;
  }
  const int overhead = crc ? crc->width : 0;
  if (k < 1 || k + overhead > n) throw std::invalid_argument("CodeSpec: bad payload size");
  std::sort(frozen.begin(), frozen.end());
  if (std::adjacent_find(frozen.begin(), frozen.end()) != frozen.end())
    throw std::invalid_argument("CodeSpec: duplicate frozen index");
  if (!frozen.empty() && (frozen.front() < 0 || frozen.back() >= n))
    throw std::invalid_argument("CodeSpec: frozen index out of range");
  if (static_cast<int>(frozen.size()) != n - k - overhead)
    throw std::invalid_argument("CodeSpec: |frozen| must be n - k - crc bits");

  CodeSpec spec;
  spec.kernel = std::move(kernel);
  spec.m = m;
  spec.n = n;
  spec.k = k;
  spec.frozen = std::move(frozen);
  spec.crc = crc;
  spec.info.reserve(static_cast<size_t>(k + overhead));
  size_t fi = 0;
  for (int i = 0; i < n; ++i) {
    if (fi < spec.frozen.size() && spec.frozen[fi] == i) {
      ++fi;
      continue;
    }
    spec.info.push_back(i);
  }
  return spec;
}

BinMatrix transform_matrix(const Kernel& k, int m) {
  return multiply(digit_reversal_matrix(k.l, m), kron_power(k.matrix, m));
}

std::vector<uint8_t> transform_encode(const Kernel& k, int m, std::span<const uint8_t> u) {
  const int l = k.l;
  if (m == 1) {
    if (static_cast<int>(u.size()) != l) throw std::invalid_argument("transform_encode: bad size");
    uint64_t acc = 0;
    for (int i = 0; i < l; ++i)
      if (u[static_cast<size_t>(i)] & 1) acc ^= k.row(i);
    std::vector<uint8_t> c(static_cast<size_t>(l));
    for (int j = 0; j < l; ++j) c[static_cast<size_t>(j)] = static_cast<uint8_t>((acc >> j) & 1u);
    return c;
  }
  const int sub = static_cast<int>(u.size()) / l;
  // Re-encode each consecutive l-block, then feed output j of every block to
  // inner transform j over the matching channel segment.
  std::vector<uint8_t> out(u.size());
  std::vector<uint8_t> inner(static_cast<size_t>(sub));
  std::vector<uint64_t> block(static_cast<size_t>(sub), 0);
  for (int r = 0; r < sub; ++r) {
    uint64_t acc = 0;
    for (int i = 0; i < l; ++i)
      if (u[static_cast<size_t>(r * l + i)] & 1) acc ^= k.row(i);
    block[static_cast<size_t>(r)] = acc;
  }
  for (int j = 0; j < l; ++j) {
    for (int r = 0; r < sub; ++r)
      inner[static_cast<size_t>(r)] = static_cast<uint8_t>((block[static_cast<size_t>(r)] >> j) & 1u);
    const auto seg = transform_encode(k, m - 1, inner);
    std::copy(seg.begin(), seg.end(), out.begin() + static_cast<ptrdiff_t>(j) * sub);
  }
  return out;
}

std::vector<uint8_t> encode(const CodeSpec& spec, std::span<const uint8_t> payload) {
  if (static_cast<int>(payload.size()) != spec.k)
    throw std::invalid_argument("encode: payload length mismatch");
  std::vector<uint8_t> bits(payload.begin(), payload.end());
  if (spec.crc) bits = crc_append(bits, *spec.crc);
  std::vector<uint8_t> u(static_cast<size_t>(spec.n), 0);
  for (size_t i = 0; i < spec.info.size(); ++i)
    u[static_cast<size_t>(spec.info[i])] = bits[i] & 1;
  return transform_encode(spec.kernel, spec.m, u);
}

DecoderTree::DecoderTree(const Kernel& kernel, int m, ProcessorKind kind,
                         std::shared_ptr<const std::vector<double>> channel)
    : l_(kernel.l), kind_(kind), kernel_(kernel), channel_(std::move(channel)) {
  n_ = 1;
  for (int i = 0; i < m; ++i) n_ *= l_;
  if (!channel_ || static_cast<int>(channel_->size()) != n_)
    throw std::invalid_argument("DecoderTree: channel size must be l^m");
  rows_.resize(static_cast<size_t>(l_));
  for (int i = 0; i < l_; ++i) rows_[static_cast<size_t>(i)] = kernel.row(i);
  root_ = build_node(m, std::span<const double>(channel_->data(), channel_->size()));
}

DecoderTree::Node DecoderTree::build_node(int level, std::span<const double> segment) {
  Node node;
  node.level = level;
  node.proc = make_proc(kernel_, kind_, plan_);
  if (level == 1) {
    node.channel = segment;
  } else {
    node.y.resize(static_cast<size_t>(l_));
    const size_t sub = segment.size() / static_cast<size_t>(l_);
    node.children.reserve(static_cast<size_t>(l_));
    for (int j = 0; j < l_; ++j)
      node.children.push_back(build_node(level - 1, segment.subspan(static_cast<size_t>(j) * sub, sub)));
  }
  node.bits.reserve(static_cast<size_t>(l_));
  return node;
}

DecoderTree::Node::Node(const Node& other)
    : level(other.level),
      proc(other.proc ? other.proc->clone() : nullptr),
      children(other.children),
      y(other.y),
      channel(other.channel),
      bits(other.bits),
      open(other.open) {}

DecoderTree::Node& DecoderTree::Node::operator=(const Node& other) {
  if (this == &other) return *this;
  level = other.level;
  proc = other.proc ? other.proc->clone() : nullptr;
  children = other.children;
  y = other.y;
  channel = other.channel;
  bits = other.bits;
  open = other.open;
  return *this;
}

DecoderTree::DecoderTree(const DecoderTree& other)
    : l_(other.l_),
      n_(other.n_),
      phase_(other.phase_),
      rows_(other.rows_),
      plan_(other.plan_),
      kind_(other.kind_),
      kernel_(other.kernel_),
      channel_(other.channel_),
      root_(other.root_) {}

DecoderTree& DecoderTree::operator=(const DecoderTree& other) {
  if (this == &other) return *this;
  l_ = other.l_;
  n_ = other.n_;
  phase_ = other.phase_;
  rows_ = other.rows_;
  plan_ = other.plan_;
  kind_ = other.kind_;
  kernel_ = other.kernel_;
  channel_ = other.channel_;
  root_ = other.root_;
  return *this;
}

double DecoderTree::Node::next_llr(int l) {
  if (!open) {
    if (level == 1) {
      proc->reset(channel);
    } else {
      for (int j = 0; j < l; ++j) y[static_cast<size_t>(j)] = children[static_cast<size_t>(j)].next_llr(l);
      proc->reset(y);
    }
    open = true;
  }
  return proc->next_llr();
}

void DecoderTree::Node::decide(int bit, int l, const std::vector<uint64_t>& rows) {
  proc->decide(bit);
  bits.push_back(static_cast<uint8_t>(bit & 1));
  if (static_cast<int>(bits.size()) == l) {
    if (level > 1) {
      uint64_t acc = 0;
      for (int i = 0; i < l; ++i)
        if (bits[static_cast<size_t>(i)]) acc ^= rows[static_cast<size_t>(i)];
      for (int j = 0; j < l; ++j)
        children[static_cast<size_t>(j)].decide(static_cast<int>((acc >> j) & 1u), l, rows);
    }
    bits.clear();
    open = false;
  }
}

uint64_t DecoderTree::Node::ops() const {
  uint64_t total = proc->ops().total();
  for (const Node& c : children) total += c.ops();
  return total;
}

void DecoderTree::Node::zero_ops() {
  proc->zero_ops();
  for (Node& c : children) c.zero_ops();
}

double DecoderTree::next_llr() {
  if (phase_ >= n_) throw std::logic_error("DecoderTree: all phases decided");
  return root_.next_llr(l_);
}

void DecoderTree::decide(int bit) {
  if (phase_ >= n_) throw std::logic_error("DecoderTree: all phases decided");
  root_.decide(bit, l_, rows_);
  ++phase_;
}

uint64_t DecoderTree::ops() const { return root_.ops(); }

void DecoderTree::zero_ops() { root_.zero_ops(); }

namespace {

DecodeResult finish_result(const CodeSpec& spec, std::vector<uint8_t> u, double score,
                           uint64_t ops) {
  DecodeResult res;
  res.codeword = transform_encode(spec.kernel, spec.m, u);
  res.u = std::move(u);
  res.score = score;
  res.kernel_ops = ops;
  std::vector<uint8_t> bits;
  bits.reserve(spec.info.size());
  for (int pos : spec.info) bits.push_back(res.u[static_cast<size_t>(pos)]);
  if (spec.crc) {
    res.crc_ok = crc_check(bits, *spec.crc);
    bits.resize(static_cast<size_t>(spec.k));
  } else {
    res.crc_ok = true;
  }
  res.payload = std::move(bits);
  return res;
}

std::vector<uint8_t> frozen_flags(const CodeSpec& spec) {
  std::vector<uint8_t> flags(static_cast<size_t>(spec.n), 0);
  for (int f : spec.frozen) flags[static_cast<size_t>(f)] = 1;
  return flags;
}

}  // namespace

DecodeResult sc_decode(const CodeSpec& spec, std::span<const double> llr, ProcessorKind kind) {
  if (static_cast<int>(llr.size()) != spec.n) throw std::invalid_argument("sc_decode: bad LLR count");
  auto channel = std::make_shared<const std::vector<double>>(llr.begin(), llr.end());
  DecoderTree tree(spec.kernel, spec.m, kind, channel);
  const auto frozen = frozen_flags(spec);
  std::vector<uint8_t> u(static_cast<size_t>(spec.n));
  double score = 0.0;
  for (int phase = 0; phase < spec.n; ++phase) {
    const double s = tree.next_llr();
    const int bit = frozen[static_cast<size_t>(phase)] ? 0 : (s < 0.0 ? 1 : 0);
    score = score_update(score, s, bit);
    tree.decide(bit);
    u[static_cast<size_t>(phase)] = static_cast<uint8_t>(bit);
  }
  return finish_result(spec, std::move(u), score, tree.ops());
}

DecodeResult scl_decode(const CodeSpec& spec, std::span<const double> llr, int list_size,
                        ProcessorKind kind) {
  if (list_size < 1) throw std::invalid_argument("scl_decode: list size must be >= 1");
  if (static_cast<int>(llr.size()) != spec.n) throw std::invalid_argument("scl_decode: bad LLR count");
  auto channel = std::make_shared<const std::vector<double>>(llr.begin(), llr.end());
  const auto frozen = frozen_flags(spec);

  struct Path {
    DecoderTree tree;
    double score = 0.0;
    std::vector<uint8_t> u;
  };
  std::vector<Path> paths;
  paths.push_back({DecoderTree(spec.kernel, spec.m, kind, channel), 0.0, {}});
  paths.front().u.reserve(static_cast<size_t>(spec.n));
  uint64_t dropped_ops = 0;

  struct Cand {
    int parent;
    int bit;
    double score;
  };
  std::vector<Cand> cands;

  for (int phase = 0; phase < spec.n; ++phase) {
    if (frozen[static_cast<size_t>(phase)]) {
      for (Path& p : paths) {
        const double s = p.tree.next_llr();
        p.score = score_update(p.score, s, 0);
        p.tree.decide(0);
        p.u.push_back(0);
      }
      continue;
    }
    cands.clear();
    for (int i = 0; i < static_cast<int>(paths.size()); ++i) {
      const double s = paths[static_cast<size_t>(i)].tree.next_llr();
      cands.push_back({i, 0, score_update(paths[static_cast<size_t>(i)].score, s, 0)});
      cands.push_back({i, 1, score_update(paths[static_cast<size_t>(i)].score, s, 1)});
    }
    if (static_cast<int>(cands.size()) > list_size) {
      // Deterministic selection: score descending, then parent, then bit.
      std::nth_element(cands.begin(), cands.begin() + list_size, cands.end(),
                       [](const Cand& a, const Cand& b) {
                         if (a.score != b.score) return a.score > b.score;
                         if (a.parent != b.parent) return a.parent < b.parent;
                         return a.bit < b.bit;
                       });
      cands.resize(static_cast<size_t>(list_size));
    }
    // Survivors per parent, rebuilt in (parent, bit) order.
    std::array<uint8_t, 2> kept{};
    std::vector<std::array<uint8_t, 2>> keep(paths.size(), kept);
    std::vector<std::array<double, 2>> kscore(paths.size());
    for (const Cand& c : cands) {
      keep[static_cast<size_t>(c.parent)][static_cast<size_t>(c.bit)] = 1;
      kscore[static_cast<size_t>(c.parent)][static_cast<size_t>(c.bit)] = c.score;
    }
    std::vector<Path> next;
    next.reserve(static_cast<size_t>(list_size));
    for (size_t i = 0; i < paths.size(); ++i) {
      const bool k0 = keep[i][0], k1 = keep[i][1];
      if (!k0 && !k1) {
        dropped_ops += paths[i].tree.ops();
        continue;
      }
      if (k0 && k1) {
        Path copy{paths[i].tree, kscore[i][1], paths[i].u};
        copy.tree.zero_ops();  // parent already carries the shared work
        paths[i].score = kscore[i][0];
        paths[i].tree.decide(0);
        paths[i].u.push_back(0);
        copy.tree.decide(1);
        copy.u.push_back(1);
        next.push_back(std::move(paths[i]));
        next.push_back(std::move(copy));
      } else {
        const int bit = k1 ? 1 : 0;
        paths[i].score = kscore[i][static_cast<size_t>(bit)];
        paths[i].tree.decide(bit);
        paths[i].u.push_back(static_cast<uint8_t>(bit));
        next.push_back(std::move(paths[i]));
      }
    }
    paths = std::move(next);
  }

  // Best CRC-passing path, else best overall.
  uint64_t total_ops = dropped_ops;
  for (const Path& p : paths) total_ops += p.tree.ops();
  const Path* best = nullptr;
  const Path* best_any = nullptr;
  for (const Path& p : paths) {
    if (!best_any || p.score > best_any->score) best_any = &p;
    if (spec.crc) {
      std::vector<uint8_t> bits;
      bits.reserve(spec.info.size());
      for (int pos : spec.info) bits.push_back(p.u[static_cast<size_t>(pos)]);
      if (crc_check(bits, *spec.crc) && (!best || p.score > best->score)) best = &p;
    }
  }
  const Path& chosen = best ? *best : *best_any;
  DecodeResult res = finish_result(spec, chosen.u, chosen.score, total_ops);
  res.final_paths = static_cast<int>(paths.size());
  return res;
}

std::vector<uint8_t> genie_sc_errors(const Kernel& kernel, int m, std::span<const double> llr,
                                     ProcessorKind kind) {
  auto channel = std::make_shared<const std::vector<double>>(llr.begin(), llr.end());
  DecoderTree tree(kernel, m, kind, channel);
  std::vector<uint8_t> errors(llr.size(), 0);
  for (int phase = 0; phase < tree.size(); ++phase) {
    errors[static_cast<size_t>(phase)] = tree.next_llr() < 0.0 ? 1 : 0;
    tree.decide(0);
  }
  return errors;
}

}  // namespace polar16
