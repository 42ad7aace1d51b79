#pragma once

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dcs/errors.hpp"
#include "dcs/weighted_graph.hpp"

namespace dcs {

// Minimal English stop list for title-style corpora; callers can supply
// their own or disable filtering entirely.
inline const std::set<std::string>& default_stopwords() {
  static const std::set<std::string> words = {
      "a",   "an",  "and", "are", "as",  "at",   "be",   "by",   "for", "from",
      "in",  "is",  "it",  "its", "of",  "on",   "or",   "the",  "to",  "via",
      "with", "we", "our", "this", "that", "using", "based", "towards"};
  return words;
}

// Keyword co-occurrence graph from one document per line: the weight of
// (u, v) is 100 times the fraction of documents containing both tokens.
// Tokens are whitespace-split and lowercased; a document contributes each
// pair once no matter how often the tokens repeat.
inline WeightedGraph ingest_cooccurrence(std::istream& docs,
                                         const std::set<std::string>& stopwords) {
  WeightedGraphBuilder builder;
  std::map<std::pair<VertexId, VertexId>, long> pair_docs;
  long doc_count = 0;

  std::string line;
  while (std::getline(docs, line)) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char ch : line) {
      if (std::isspace(static_cast<unsigned char>(ch))) {
        if (!cur.empty()) tokens.push_back(std::move(cur)), cur.clear();
      } else {
        cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
      }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    if (tokens.empty()) continue;  // blank lines are not documents
    ++doc_count;

    std::set<VertexId> present;
    for (const auto& tok : tokens) {
      if (stopwords.count(tok)) continue;
      present.insert(builder.intern(tok));
    }
    for (auto it = present.begin(); it != present.end(); ++it)
      for (auto jt = std::next(it); jt != present.end(); ++jt)
        pair_docs[{*it, *jt}]++;
  }
  if (doc_count == 0) throw EmptyCorpus("ingest: no documents");

  for (const auto& [pair, cnt] : pair_docs)
    builder.add_edge_ids(pair.first, pair.second,
                         100.0 * static_cast<double>(cnt) / static_cast<double>(doc_count));
  return std::move(builder).build();
}

inline WeightedGraph ingest_cooccurrence(std::istream& docs) {
  return ingest_cooccurrence(docs, default_stopwords());
}

}  // namespace dcs
