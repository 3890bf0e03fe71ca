#pragma once

// Decision-tree induction over categorical, numeric and sequential
// attributes. A sequential attribute is tested through one mined pattern
// per node ("contains P" / "!contains P").

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "convtag/seqmine.hpp"

namespace convtag::seqtree {

enum class AttributeType { Categorical, Numeric, Sequential };

struct Attribute {
  std::string name;
  AttributeType type = AttributeType::Categorical;

  friend bool operator==(const Attribute&, const Attribute&) = default;
};

// Alternative must agree with the attribute type: string / double / Sequence.
using Value = std::variant<std::string, double, Sequence>;

struct Instance {
  std::vector<Value> values;  // one per attribute
};

struct Dataset {
  std::vector<Attribute> attributes;
  std::vector<std::string> classes;
  std::vector<Instance> instances;
  std::vector<int> labels;  // index into classes

  // Throws on arity or type mismatches and out-of-range labels.
  void validate() const;
};

struct TreeParams {
  MinerParams miner;
  std::size_t min_leaf = 2;
  double confidence = 0.25;
  bool prune = true;
};

struct TreeNode {
  enum class Test { Leaf, Categorical, Numeric, Sequential };

  Test test = Test::Leaf;
  std::size_t attribute = 0;
  double threshold = 0.0;           // Numeric: child 0 is "<=", child 1 is ">"
  SequentialPattern pattern;        // Sequential: child 0 contains, child 1 does not
  std::vector<std::string> values;  // Categorical: children[i] holds values[i]
  std::vector<TreeNode> children;

  int label = 0;                      // majority class
  std::vector<double> distribution;  // class counts reaching this node

  bool is_leaf() const noexcept { return test == Test::Leaf; }
};

struct DecisionTree {
  std::vector<Attribute> attributes;
  std::vector<std::string> classes;
  int max_gap = 2;
  TreeNode root;

  std::size_t node_count() const;
  std::size_t leaf_count() const;
};

// Throws on an empty or invalid dataset.
DecisionTree induce_tree(const Dataset& data, const TreeParams& params = {});

struct TreePrediction {
  int label = 0;
  double confidence = 0.0;  // majority share of the reached leaf
};

// Throws when the instance lacks an attribute the tree needs.
TreePrediction predict_tree(const DecisionTree& tree, const Instance& instance);

// Pessimistic error allowance for a leaf holding n instances with e errors
// at confidence level cf (upper binomial bound, normal approximation).
double pessimistic_added_errors(double n, double e, double cf);

// Indented text form, one branch per line:
//   words contains (a,b)>d: yes [3,0]
//   words !contains (a,b)>d [1,3]
//   |   length <= 4.5: no [0,2]
std::string write_tree(const DecisionTree& tree);
DecisionTree read_tree(std::string_view text);
void save_tree(const DecisionTree& tree, const std::filesystem::path& path);
DecisionTree load_tree(const std::filesystem::path& path);

}  // namespace convtag::seqtree
