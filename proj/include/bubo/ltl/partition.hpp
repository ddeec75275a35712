#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "formula.hpp"

namespace bubo {

/// Input/output split of the signal alphabet.  Also fixes the global
/// proposition ordering used by automata and circuits: inputs first (in
/// declaration order), then outputs.
struct signal_partition {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;

  signal_partition() = default;
  signal_partition(std::vector<std::string> ins, std::vector<std::string> outs)
      : inputs(std::move(ins)), outputs(std::move(outs)) {
    for (const std::string& i : inputs)
      if (is_output(i))
        throw std::invalid_argument("signal_partition: '" + i +
                                    "' is both input and output");
  }

  bool is_input(const std::string& name) const {
    return std::find(inputs.begin(), inputs.end(), name) != inputs.end();
  }
  bool is_output(const std::string& name) const {
    return std::find(outputs.begin(), outputs.end(), name) != outputs.end();
  }
  bool contains(const std::string& name) const {
    return is_input(name) || is_output(name);
  }

  size_t size() const { return inputs.size() + outputs.size(); }

  /// Index in the combined proposition order (inputs then outputs).
  unsigned index_of(const std::string& name) const {
    for (size_t i = 0; i < inputs.size(); ++i)
      if (inputs[i] == name)
        return unsigned(i);
    for (size_t i = 0; i < outputs.size(); ++i)
      if (outputs[i] == name)
        return unsigned(inputs.size() + i);
    throw std::out_of_range("signal_partition: unknown proposition '" + name +
                            "'");
  }

  std::vector<std::string> all_props() const {
    std::vector<std::string> ps = inputs;
    ps.insert(ps.end(), outputs.begin(), outputs.end());
    return ps;
  }

  uint32_t input_mask() const {
    return inputs.empty() ? 0 : (uint32_t(1) << inputs.size()) - 1;
  }
  uint32_t output_mask() const {
    uint32_t all =
        size() >= 32 ? ~uint32_t(0) : (uint32_t(1) << size()) - 1;
    return all & ~input_mask();
  }

  /// Every atom of f must be declared.
  void check_covers(const formula& f) const {
    for (const std::string& a : f.aps())
      if (!contains(a))
        throw std::invalid_argument(
            "proposition '" + a + "' is neither an input nor an output");
  }
};

} // namespace bubo
