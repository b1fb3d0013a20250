#include "deplabel/encodings.hpp"

#include <stdexcept>

#include "deplabel/bracket.hpp"
#include "deplabel/headsel.hpp"
#include "deplabel/transition.hpp"

namespace deplabel {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(text.substr(start));
      return out;
    }
    out.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

std::string_view encoding_id(Encoding encoding) {
  switch (encoding) {
    case Encoding::RelPos: return "rph";
    case Encoding::Bracket: return "rxb";
    case Encoding::TwoPlanar: return "2pb";
    case Encoding::ArcHybrid: return "ahtb";
    case Encoding::Covington: return "ctb";
  }
  return "rph";
}

std::optional<Encoding> encoding_from_id(std::string_view id) {
  for (Encoding e : kAllEncodings)
    if (encoding_id(e) == id) return e;
  return std::nullopt;
}

std::vector<std::string> component_names(Encoding encoding) {
  switch (encoding) {
    case Encoding::RelPos: return {"head", "deprel"};
    case Encoding::Bracket: return {"brackets", "deprel"};
    case Encoding::TwoPlanar: return {"plane1", "plane2", "deprel"};
    case Encoding::ArcHybrid: return {"transitions", "deprel"};
    case Encoding::Covington: return {"transitions", "deprel"};
  }
  return {};
}

EncodeResult encode_labels(const DepTree& tree, const std::vector<std::string>& tags,
                           Encoding encoding) {
  EncodeResult out;
  const auto sz = static_cast<std::size_t>(tree.n);
  switch (encoding) {
    case Encoding::RelPos: {
      auto labels = headsel::encode(tree, tags);
      out.components.assign(2, std::vector<std::string>(sz));
      for (std::size_t i = 0; i < sz; ++i) {
        out.components[0][i] = headsel::head_component(labels[i]);
        out.components[1][i] = labels[i].deprel;
      }
      break;
    }
    case Encoding::Bracket: {
      auto enc = bracket::encode(tree);
      out.components.assign(2, std::vector<std::string>(sz));
      for (std::size_t i = 0; i < sz; ++i) {
        out.components[0][i] = bracket::to_string(enc.labels[i].brackets);
        out.components[1][i] = enc.labels[i].deprel;
      }
      out.dropped = std::move(enc.dropped);
      break;
    }
    case Encoding::TwoPlanar: {
      auto enc = bracket::encode_2planar(tree);
      out.components.assign(3, std::vector<std::string>(sz));
      for (std::size_t i = 0; i < sz; ++i) {
        out.components[0][i] = bracket::to_string(enc.labels[i].plane1);
        out.components[1][i] = bracket::to_string(enc.labels[i].plane2, /*starred=*/true);
        out.components[2][i] = enc.labels[i].deprel;
      }
      out.dropped = std::move(enc.dropped);
      break;
    }
    case Encoding::ArcHybrid:
    case Encoding::Covington: {
      auto system = encoding == Encoding::ArcHybrid ? transition::System::ArcHybrid
                                                    : transition::System::Covington;
      auto enc = transition::encode(tree, system);
      out.components.assign(2, std::vector<std::string>(sz));
      for (std::size_t i = 0; i < sz; ++i) {
        out.components[0][i] = transition::to_string(enc.labels[i]);
        out.components[1][i] = enc.labels[i].deprel;
      }
      out.dropped = std::move(enc.dropped);
      break;
    }
  }
  return out;
}

DepTree decode_labels(const std::vector<std::vector<std::string>>& components,
                      const std::vector<std::string>& tags, Encoding encoding) {
  const std::size_t want = component_names(encoding).size();
  if (components.size() != want)
    throw std::invalid_argument("wrong component count for encoding");
  const std::size_t n = components.empty() ? 0 : components[0].size();
  for (const auto& column : components)
    if (column.size() != n) throw std::invalid_argument("ragged component columns");

  switch (encoding) {
    case Encoding::RelPos: {
      std::vector<headsel::RelPosLabel> labels;
      labels.reserve(n);
      for (std::size_t i = 0; i < n; ++i)
        labels.push_back(headsel::parse_head_component(components[0][i], components[1][i]));
      return headsel::decode(labels, tags);
    }
    case Encoding::Bracket: {
      std::vector<bracket::BracketLabel> labels(n);
      for (std::size_t i = 0; i < n; ++i) {
        labels[i].brackets = bracket::parse(components[0][i]);
        labels[i].deprel = components[1][i];
      }
      return bracket::decode(labels);
    }
    case Encoding::TwoPlanar: {
      std::vector<bracket::TwoPlanarLabel> labels(n);
      for (std::size_t i = 0; i < n; ++i) {
        labels[i].plane1 = bracket::parse(components[0][i]);
        labels[i].plane2 = bracket::parse(components[1][i]);
        labels[i].deprel = components[2][i];
      }
      return bracket::decode_2planar(labels);
    }
    case Encoding::ArcHybrid:
    case Encoding::Covington: {
      std::vector<transition::Chunk> labels;
      labels.reserve(n);
      for (std::size_t i = 0; i < n; ++i)
        labels.push_back(transition::parse_chunk(components[0][i], components[1][i]));
      auto system = encoding == Encoding::ArcHybrid ? transition::System::ArcHybrid
                                                    : transition::System::Covington;
      return transition::replay(labels, system);
    }
  }
  throw std::logic_error("unreachable");
}

std::vector<std::string> display_labels(const DepTree& tree,
                                        const std::vector<std::string>& tags,
                                        Encoding encoding) {
  EncodeResult enc = encode_labels(tree, tags, encoding);
  std::vector<std::string> rows(static_cast<std::size_t>(tree.n));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i] = enc.components[0][i];
    // Every head component, i.e. every column but the trailing deprel.
    for (std::size_t c = 1; c + 1 < enc.components.size(); ++c)
      rows[i] += " " + enc.components[c][i];
  }
  return rows;
}

std::string write_label_file(const std::vector<LabeledSentence>& sentences,
                             Encoding encoding) {
  const std::size_t columns = component_names(encoding).size();
  std::string out;
  for (const LabeledSentence& s : sentences) {
    if (s.components.size() != columns)
      throw std::invalid_argument("wrong component count for encoding");
    for (std::size_t i = 0; i < s.forms.size(); ++i) {
      out += std::to_string(i + 1);
      out += '\t';
      out += s.forms[i];
      out += '\t';
      out += i < s.upos.size() ? s.upos[i] : std::string("_");
      for (const auto& column : s.components) {
        out += '\t';
        out += column[i];
      }
      out += '\n';
    }
    out += '\n';
  }
  return out;
}

std::vector<LabeledSentence> parse_label_file(std::string_view text, Encoding encoding) {
  const std::size_t columns = component_names(encoding).size();
  std::vector<LabeledSentence> out;
  LabeledSentence current;
  current.components.assign(columns, {});

  auto flush = [&] {
    if (!current.forms.empty()) out.push_back(std::move(current));
    current = {};
    current.components.assign(columns, {});
  };

  std::size_t line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) {
      flush();
      continue;
    }
    auto cols = split(line, '\t');
    if (cols.size() != 3 + columns)
      throw std::runtime_error("label file line " + std::to_string(line_no) +
                               ": expected " + std::to_string(3 + columns) + " columns");
    current.forms.emplace_back(cols[1]);
    current.upos.emplace_back(cols[2]);
    for (std::size_t c = 0; c < columns; ++c)
      current.components[c].emplace_back(cols[3 + c]);
  }
  flush();
  return out;
}

}  // namespace deplabel
