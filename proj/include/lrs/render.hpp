#pragma once

// Text rendering of Cayley tables: row and column headed by element
// labels, the operation symbol in the corner, columns padded to the
// widest entry.  Padding counts UTF-8 code points, not bytes, so the
// multi-byte symbols used in labels stay aligned.

#include <string>
#include <vector>

#include "lrs/semigroup.hpp"

namespace lrs {

inline size_t utf8_length(const std::string& s) {
  size_t n = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++n;
  return n;
}

/// Cell grid of labels in the given element order (natural order when
/// empty).  Row i, column j of the body is the label of order[i]*order[j].
inline std::vector<std::vector<std::string>> table_by_labels(
    const FiniteSemigroup& s, std::vector<std::string> order = {}) {
  if (order.empty()) order = s.labels;
  std::vector<int> ids;
  ids.reserve(order.size());
  for (const std::string& lab : order) {
    int found = -1;
    for (int i = 0; i < s.order; ++i)
      if (s.labels[i] == lab) {
        found = i;
        break;
      }
    if (found < 0) throw UnknownName("no element labeled \"" + lab + "\"");
    ids.push_back(found);
  }
  std::vector<std::vector<std::string>> out;
  out.reserve(ids.size());
  for (int a : ids) {
    std::vector<std::string> row;
    row.reserve(ids.size());
    for (int b : ids) row.push_back(s.label(s.at(a, b)));
    out.push_back(std::move(row));
  }
  return out;
}

inline std::string render_table(const FiniteSemigroup& s,
                                std::vector<std::string> order = {},
                                const std::string& corner = "⋆") {
  if (order.empty()) order = s.labels;
  auto body = table_by_labels(s, order);
  size_t m = order.size();

  std::vector<size_t> width(m + 1, utf8_length(corner));
  for (size_t i = 0; i < m; ++i)
    width[0] = std::max(width[0], utf8_length(order[i]));
  for (size_t j = 0; j < m; ++j) {
    width[j + 1] = utf8_length(order[j]);
    for (size_t i = 0; i < m; ++i)
      width[j + 1] = std::max(width[j + 1], utf8_length(body[i][j]));
  }

  auto pad = [](const std::string& cell, size_t w) {
    return cell + std::string(w - utf8_length(cell), ' ');
  };
  std::string out = pad(corner, width[0]);
  for (size_t j = 0; j < m; ++j) out += " | " + pad(order[j], width[j + 1]);
  out += '\n';
  std::string rule(utf8_length(out) - 1, '-');
  out += rule + '\n';
  for (size_t i = 0; i < m; ++i) {
    out += pad(order[i], width[0]);
    for (size_t j = 0; j < m; ++j) out += " | " + pad(body[i][j], width[j + 1]);
    out += '\n';
  }
  return out;
}

}  // namespace lrs
