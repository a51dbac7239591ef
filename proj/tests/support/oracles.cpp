#include "oracles.hpp"

#include <cmath>
#include <functional>
#include <map>

namespace translit::oracle {

namespace {

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

// Oracle inputs are ASCII or simple UTF-8; split into codepoint strings.
std::vector<std::string> codepoints(const std::string& s) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < s.size();) {
    std::size_t len = 1;
    const auto b = static_cast<unsigned char>(s[i]);
    if (b >= 0xF0) len = 4;
    else if (b >= 0xE0) len = 3;
    else if (b >= 0xC0) len = 2;
    out.push_back(s.substr(i, len));
    i += len;
  }
  return out;
}

template <typename T>
std::vector<std::vector<T>> grams(const std::vector<T>& seq, std::size_t n) {
  std::vector<std::vector<T>> out;
  for (std::size_t i = 0; i + n <= seq.size(); ++i) out.emplace_back(seq.begin() + i, seq.begin() + i + n);
  return out;
}

// Clipped matches by scanning: each hypothesis n-gram consumes one unused
// equal reference n-gram.
template <typename T>
std::size_t clipped(const std::vector<std::vector<T>>& h, const std::vector<std::vector<T>>& r) {
  std::vector<bool> used(r.size(), false);
  std::size_t m = 0;
  for (const auto& g : h)
    for (std::size_t j = 0; j < r.size(); ++j)
      if (!used[j] && r[j] == g) {
        used[j] = true;
        ++m;
        break;
      }
  return m;
}

}  // namespace

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (is_ws(c)) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

double cer(const std::string& hyp, const std::string& ref) {
  const auto r = codepoints(ref);
  return static_cast<double>(levenshtein(codepoints(hyp), r)) / static_cast<double>(r.size());
}

double wer(const std::string& hyp, const std::string& ref) {
  const auto r = split_ws(ref);
  return static_cast<double>(levenshtein(split_ws(hyp), r)) / static_cast<double>(r.size());
}

double bleu(const std::vector<std::string>& hyps, const std::vector<std::string>& refs) {
  double c = 0, r = 0;
  double num[4] = {0, 0, 0, 0}, den[4] = {0, 0, 0, 0};
  for (std::size_t s = 0; s < hyps.size(); ++s) {
    const auto h = split_ws(hyps[s]);
    const auto rf = split_ws(refs[s]);
    c += static_cast<double>(h.size());
    r += static_cast<double>(rf.size());
    for (std::size_t n = 1; n <= 4; ++n) {
      const auto hg = grams(h, n);
      num[n - 1] += static_cast<double>(clipped(hg, grams(rf, n)));
      den[n - 1] += static_cast<double>(hg.size());
    }
  }
  double product = 1;
  for (int n = 0; n < 4; ++n) {
    if (num[n] == 0) return 0;
    product *= num[n] / den[n];
  }
  const double bp = c < r ? std::exp(1 - r / c) : 1;
  return 100 * bp * std::pow(product, 0.25);
}

double chrf(const std::string& hyp, const std::string& ref) {
  std::vector<std::string> h, r;
  for (auto& cp : codepoints(hyp))
    if (!(cp.size() == 1 && is_ws(cp[0]))) h.push_back(cp);
  for (auto& cp : codepoints(ref))
    if (!(cp.size() == 1 && is_ws(cp[0]))) r.push_back(cp);
  double ps = 0, rs = 0;
  int orders = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto hg = grams(h, n);
    const auto rg = grams(r, n);
    if (hg.empty() || rg.empty()) continue;
    const double m = static_cast<double>(clipped(hg, rg));
    ps += m / static_cast<double>(hg.size());
    rs += m / static_cast<double>(rg.size());
    ++orders;
  }
  if (orders == 0) return 0;
  const double p = ps / orders, rc = rs / orders;
  if (p + rc == 0) return 0;
  return 100 * 5 * p * rc / (4 * p + rc);
}

double rouge_n(const std::string& hyp, const std::string& ref, std::size_t n) {
  const auto hg = grams(split_ws(hyp), n);
  const auto rg = grams(split_ws(ref), n);
  if (hg.empty() || rg.empty()) return 0;
  const double m = static_cast<double>(clipped(hg, rg));
  if (m == 0) return 0;
  const double p = m / static_cast<double>(hg.size()), rc = m / static_cast<double>(rg.size());
  return 100 * 2 * p * rc / (p + rc);
}

double rouge_l(const std::string& hyp, const std::string& ref) {
  const auto h = split_ws(hyp), r = split_ws(ref);
  if (h.empty() || r.empty()) return 0;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo;
  std::function<std::size_t(std::size_t, std::size_t)> lcs = [&](std::size_t i, std::size_t j) -> std::size_t {
    if (i == h.size() || j == r.size()) return 0;
    auto key = std::make_pair(i, j);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const std::size_t v = h[i] == r[j] ? 1 + lcs(i + 1, j + 1) : std::max(lcs(i + 1, j), lcs(i, j + 1));
    return memo[key] = v;
  };
  const double m = static_cast<double>(lcs(0, 0));
  if (m == 0) return 0;
  const double p = m / static_cast<double>(h.size()), rc = m / static_cast<double>(r.size());
  return 100 * 2 * p * rc / (p + rc);
}

double meteor(const std::string& hyp, const std::string& ref) {
  const auto h = split_ws(hyp), r = split_ws(ref);
  // Enumerate every partial one-to-one exact alignment.
  std::size_t best_m = 0, best_chunks = 0;
  std::vector<long> align(h.size(), -1);
  std::vector<bool> used(r.size(), false);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == h.size()) {
      std::size_t m = 0, chunks = 0;
      for (std::size_t k = 0; k < h.size(); ++k) {
        if (align[k] < 0) continue;
        ++m;
        if (k == 0 || align[k - 1] < 0 || align[k - 1] + 1 != align[k]) ++chunks;
      }
      if (m > best_m || (m == best_m && chunks < best_chunks)) best_m = m, best_chunks = chunks;
      return;
    }
    align[i] = -1;
    rec(i + 1);
    for (std::size_t j = 0; j < r.size(); ++j)
      if (!used[j] && r[j] == h[i]) {
        used[j] = true;
        align[i] = static_cast<long>(j);
        rec(i + 1);
        align[i] = -1;
        used[j] = false;
      }
  };
  rec(0);
  if (best_m == 0) return 0;
  const double m = static_cast<double>(best_m);
  const double p = m / static_cast<double>(h.size()), rc = m / static_cast<double>(r.size());
  const double fmean = p * rc / (0.9 * p + 0.1 * rc);
  const double pen = 0.5 * std::pow(static_cast<double>(best_chunks) / m, 3);
  return 100 * fmean * (1 - pen);
}

}  // namespace translit::oracle
