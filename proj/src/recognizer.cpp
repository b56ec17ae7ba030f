#include "rftag/recognizer.hpp"

#include <algorithm>

#include "rftag/error.hpp"

namespace rftag {

YieldGrammar derive_yield_cfg(const TreeAutomaton& a) {
  YieldGrammar yg;
  std::map<std::string, int> index;
  for (const std::string& q : a.states) {
    index.emplace(q, static_cast<int>(yg.state_names.size()));
    yg.state_names.push_back(q);
  }
  auto fresh = [&](const std::string& hint) {
    int id = static_cast<int>(yg.state_names.size());
    yg.state_names.push_back("bin" + std::to_string(id) + "_" + hint);
    return id;
  };

  for (const auto& [key, outs] : a.transitions) {
    const auto& [sym, qs] = key;
    for (const std::string& out : outs) {
      int lhs = index.at(out);
      if (qs.empty()) {
        if (sym.is_epsilon()) {
          yg.epsilon_states.push_back(lhs);
        } else {
          // a non-terminal leaf would contribute its own name as a token;
          // compiled automata only produce terminal leaves here
          yg.terminal[sym.name].push_back(lhs);
        }
        continue;
      }
      std::vector<int> rhs;
      rhs.reserve(qs.size());
      for (const std::string& q : qs) rhs.push_back(index.at(q));
      // the node label itself vanishes: the yield of sym(t1..tn) is the
      // concatenation of the children's yields
      if (rhs.size() == 1) {
        yg.unary.emplace_back(lhs, rhs[0]);
      } else {
        // left-nested binarization: (((q1 q2) q3) ... qn)
        int acc = rhs[0];
        for (std::size_t i = 1; i + 1 < rhs.size(); ++i) {
          int mid = fresh(std::to_string(i));
          yg.binary.push_back({mid, acc, rhs[i]});
          acc = mid;
        }
        yg.binary.push_back({lhs, acc, rhs.back()});
      }
    }
  }
  for (const std::string& f : a.finals) yg.start_states.push_back(index.at(f));
  std::sort(yg.start_states.begin(), yg.start_states.end());
  return yg;
}

namespace {

inline void set_bit(std::vector<std::uint64_t>& bits, int i) {
  bits[static_cast<std::size_t>(i) >> 6] |= std::uint64_t{1} << (i & 63);
}
inline bool get_bit(const std::vector<std::uint64_t>& bits, int i) {
  return (bits[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1;
}

}  // namespace

Recognizer::Recognizer(const TagGrammar& g, const CompileOptions& opts)
    : terminals_(g.terminals), automaton_(compile_regular_tag(g, opts)) {
  yield_ = derive_yield_cfg(automaton_);
  std::size_t n_states = yield_.state_names.size();
  words_ = (n_states + 63) / 64;

  nullable_.assign(n_states, 0);
  for (int q : yield_.epsilon_states) nullable_[static_cast<std::size_t>(q)] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [a, b] : yield_.unary) {
      if (nullable_[static_cast<std::size_t>(b)] && !nullable_[static_cast<std::size_t>(a)]) {
        nullable_[static_cast<std::size_t>(a)] = 1;
        changed = true;
      }
    }
    for (const auto& r : yield_.binary) {
      if (nullable_[static_cast<std::size_t>(r[1])] && nullable_[static_cast<std::size_t>(r[2])] &&
          !nullable_[static_cast<std::size_t>(r[0])]) {
        nullable_[static_cast<std::size_t>(r[0])] = 1;
        changed = true;
      }
    }
  }

  // unit edges: explicit unaries plus binaries with one nullable side
  std::vector<std::pair<int, int>> units = yield_.unary;
  for (const auto& r : yield_.binary) {
    if (nullable_[static_cast<std::size_t>(r[2])]) units.emplace_back(r[0], r[1]);
    if (nullable_[static_cast<std::size_t>(r[1])]) units.emplace_back(r[0], r[2]);
  }
  // unit_pre_[q] = every state reaching q through unit chains, q included
  unit_pre_.assign(n_states, std::vector<std::uint64_t>(words_, 0));
  for (std::size_t q = 0; q < n_states; ++q) set_bit(unit_pre_[q], static_cast<int>(q));
  changed = true;
  while (changed) {
    changed = false;
    for (const auto& [a, b] : units) {
      // everything reaching a also reaches b
      auto& dst = unit_pre_[static_cast<std::size_t>(b)];
      const auto& src = unit_pre_[static_cast<std::size_t>(a)];
      for (std::size_t w = 0; w < words_; ++w) {
        std::uint64_t nv = dst[w] | src[w];
        if (nv != dst[w]) {
          dst[w] = nv;
          changed = true;
        }
      }
    }
  }

  cky_binary_ = yield_.binary;
}

std::vector<int> Recognizer::token_states(const Symbol& tok) const {
  auto it = yield_.terminal.find(tok.name);
  if (it == yield_.terminal.end()) return {};
  return it->second;
}

bool Recognizer::recognize(const TokenString& w) const {
  for (const Symbol& tok : w.tokens) {
    if (!tok.is_terminal() || !terminals_.count(tok)) {
      fail(Errc::unknown_token, "token '" + tok.name + "' is not a terminal of the grammar");
    }
  }
  std::size_t n = w.tokens.size();
  if (n == 0) {
    return std::any_of(yield_.start_states.begin(), yield_.start_states.end(),
                       [&](int q) { return nullable_[static_cast<std::size_t>(q)] != 0; });
  }

  auto close = [&](std::uint64_t* cell) {
    for (std::size_t wd = 0; wd < words_; ++wd) {
      std::uint64_t bits = cell[wd];
      while (bits) {
        int q = static_cast<int>(wd * 64 + static_cast<std::size_t>(__builtin_ctzll(bits)));
        bits &= bits - 1;
        const auto& pre = unit_pre_[static_cast<std::size_t>(q)];
        for (std::size_t k = 0; k < words_; ++k) cell[k] |= pre[k];
      }
    }
  };

  // chart rows are contiguous in the second index; the transposed mirror
  // keeps the inner split loop contiguous for the right-hand cells as well
  std::vector<std::uint64_t> chart((n + 1) * (n + 1) * words_, 0);
  std::vector<std::uint64_t> mirror((n + 1) * (n + 1) * words_, 0);
  auto cell = [&](std::size_t i, std::size_t j) { return &chart[(i * (n + 1) + j) * words_]; };
  auto cell_t = [&](std::size_t j, std::size_t i) { return &mirror[(j * (n + 1) + i) * words_]; };

  auto store = [&](std::size_t i, std::size_t j, const std::uint64_t* bits) {
    std::copy(bits, bits + words_, cell(i, j));
    std::copy(bits, bits + words_, cell_t(j, i));
  };

  std::vector<std::uint64_t> acc(words_);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (int q : token_states(w.tokens[i])) {
      acc[static_cast<std::size_t>(q) >> 6] |= std::uint64_t{1} << (q & 63);
    }
    close(acc.data());
    store(i, i + 1, acc.data());
  }

  for (std::size_t len = 2; len <= n; ++len) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      std::size_t j = i + len;
      std::fill(acc.begin(), acc.end(), 0);
      const std::uint64_t* left_row = cell(i, 0);
      const std::uint64_t* right_col = cell_t(j, 0);
      for (std::size_t k = i + 1; k < j; ++k) {
        const std::uint64_t* left = left_row + k * words_;
        const std::uint64_t* right = right_col + k * words_;
        for (const auto& r : cky_binary_) {
          if ((left[static_cast<std::size_t>(r[1]) >> 6] >> (r[1] & 63)) & 1 &&
              (right[static_cast<std::size_t>(r[2]) >> 6] >> (r[2] & 63)) & 1) {
            acc[static_cast<std::size_t>(r[0]) >> 6] |= std::uint64_t{1} << (r[0] & 63);
          }
        }
      }
      close(acc.data());
      store(i, j, acc.data());
    }
  }

  const std::uint64_t* full = cell(0, n);
  return std::any_of(yield_.start_states.begin(), yield_.start_states.end(), [&](int q) {
    return (full[static_cast<std::size_t>(q) >> 6] >> (q & 63)) & 1;
  });
}

Chart Recognizer::chart(const TokenString& w) const {
  // rerun CKY keeping the cells; used for --chart and the locality tests
  for (const Symbol& tok : w.tokens) {
    if (!tok.is_terminal() || !terminals_.count(tok)) {
      fail(Errc::unknown_token, "token '" + tok.name + "' is not a terminal of the grammar");
    }
  }
  std::size_t n = w.tokens.size();
  std::vector<std::vector<std::vector<char>>> cells(
      n + 1, std::vector<std::vector<char>>(n + 1, std::vector<char>(yield_.state_names.size(), 0)));

  auto close = [&](std::vector<char>& c) {
    for (std::size_t q = 0; q < c.size(); ++q) {
      if (!c[q]) continue;
      const auto& pre = unit_pre_[q];
      for (std::size_t p = 0; p < c.size(); ++p) {
        if (get_bit(pre, static_cast<int>(p))) c[p] = 1;
      }
    }
  };

  for (std::size_t i = 0; i < n; ++i) {
    auto& c = cells[i][i + 1];
    for (int q : token_states(w.tokens[i])) c[static_cast<std::size_t>(q)] = 1;
    close(c);
  }
  for (std::size_t len = 2; len <= n; ++len) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      std::size_t j = i + len;
      auto& c = cells[i][j];
      for (std::size_t k = i + 1; k < j; ++k) {
        for (const auto& r : cky_binary_) {
          if (cells[i][k][static_cast<std::size_t>(r[1])] &&
              cells[k][j][static_cast<std::size_t>(r[2])]) {
            c[static_cast<std::size_t>(r[0])] = 1;
          }
        }
      }
      close(c);
    }
  }

  Chart out;
  out.n = n;
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      std::vector<std::string> names;
      for (std::size_t q = 0; q < yield_.state_names.size(); ++q) {
        if (cells[i][j][q]) names.push_back(yield_.state_names[q]);
      }
      if (!names.empty()) out.cells[{i, j}] = std::move(names);
    }
  }
  return out;
}

bool recognize(const TagGrammar& g, const TokenString& w) { return Recognizer(g).recognize(w); }

}  // namespace rftag
