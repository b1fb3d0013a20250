#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "deplabel/deptree.hpp"

namespace deplabel {

// The five linearizations. CLI/file ids: rph, rxb, 2pb, ahtb, ctb.
enum class Encoding { RelPos, Bracket, TwoPlanar, ArcHybrid, Covington };

inline constexpr Encoding kAllEncodings[] = {Encoding::RelPos, Encoding::Bracket,
                                             Encoding::TwoPlanar, Encoding::ArcHybrid,
                                             Encoding::Covington};

std::string_view encoding_id(Encoding encoding);
std::optional<Encoding> encoding_from_id(std::string_view id);

// Label components per encoding; the dependency type is always the last one.
// rph: head, deprel | rxb: brackets, deprel | 2pb: plane1, plane2, deprel |
// ahtb/ctb: transitions, deprel.
std::vector<std::string> component_names(Encoding encoding);

struct EncodeResult {
  // components[c][i] is the c-th component string of token i+1.
  std::vector<std::vector<std::string>> components;
  std::vector<Arc> dropped;
};

// Encodes one tree into per-token component strings. tags (gold or
// predicted PoS, one per token) are used by RelPos only.
EncodeResult encode_labels(const DepTree& tree, const std::vector<std::string>& tags,
                           Encoding encoding);

// Total decoder over component strings; corrupted strings are absorbed by
// the per-codec lenient parsers plus repair.
DepTree decode_labels(const std::vector<std::vector<std::string>>& components,
                      const std::vector<std::string>& tags, Encoding encoding);

// Display row: the head component(s) of each token joined with spaces, for
// the 2-planar encoding as "plane1 plane2" with plane 2 starred.
std::vector<std::string> display_labels(const DepTree& tree,
                                        const std::vector<std::string>& tags,
                                        Encoding encoding);

// A sentence of an encoded-label file.
struct LabeledSentence {
  std::vector<std::string> forms;
  std::vector<std::string> upos;
  std::vector<std::vector<std::string>> components;  // [component][token]
};

// TSV label files: columns index, form, upos, then one column per label
// component; sentences separated by blank lines.
std::string write_label_file(const std::vector<LabeledSentence>& sentences,
                             Encoding encoding);
std::vector<LabeledSentence> parse_label_file(std::string_view text, Encoding encoding);

}  // namespace deplabel
