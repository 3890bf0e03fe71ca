#include "convtag/seqtree.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include <boost/math/distributions/normal.hpp>

#include "convtag/error.hpp"
#include "text_io.hpp"

namespace convtag::seqtree {

namespace {

bool matches_type(const Value& v, AttributeType type) {
  switch (type) {
    case AttributeType::Categorical: return std::holds_alternative<std::string>(v);
    case AttributeType::Numeric: return std::holds_alternative<double>(v);
    case AttributeType::Sequential: return std::holds_alternative<Sequence>(v);
  }
  return false;
}

// Names, values and items end up in the text form; keep them unambiguous.
void check_token(const std::string& s, const char* what) {
  if (s.empty() || s.find_first_of(" \t\r\n:[]|") != std::string::npos)
    throw Error(ErrorCode::InvalidArgument,
                std::string(what) + " '" + s + "' is empty or contains reserved characters");
}

}  // namespace

void Dataset::validate() const {
  if (attributes.empty()) throw Error(ErrorCode::InvalidArgument, "dataset has no attributes");
  if (classes.empty()) throw Error(ErrorCode::InvalidArgument, "dataset has no classes");
  if (instances.size() != labels.size())
    throw Error(ErrorCode::InvalidArgument, "instances and labels differ in length");
  for (const auto& a : attributes) check_token(a.name, "attribute name");
  for (const auto& c : classes) {
    check_token(c, "class name");
    if (c.find(',') != std::string::npos)
      throw Error(ErrorCode::InvalidArgument, "class name '" + c + "' contains ','");
  }
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& inst = instances[i];
    if (inst.values.size() != attributes.size())
      throw Error(ErrorCode::InvalidArgument, "instance " + std::to_string(i) + " has " +
                                                  std::to_string(inst.values.size()) + " values, expected " +
                                                  std::to_string(attributes.size()));
    for (std::size_t a = 0; a < attributes.size(); ++a)
      if (!matches_type(inst.values[a], attributes[a].type))
        throw Error(ErrorCode::InvalidArgument, "instance " + std::to_string(i) + ": attribute '" +
                                                    attributes[a].name + "' has the wrong type");
    if (labels[i] < 0 || static_cast<std::size_t>(labels[i]) >= classes.size())
      throw Error(ErrorCode::InvalidArgument, "instance " + std::to_string(i) + ": label out of range");
  }
}

namespace {

std::size_t count_nodes(const TreeNode& n, bool leaves_only) {
  std::size_t c = (!leaves_only || n.is_leaf()) ? 1 : 0;
  for (const auto& ch : n.children) c += count_nodes(ch, leaves_only);
  return c;
}

int majority(const std::vector<double>& dist) {
  return static_cast<int>(std::max_element(dist.begin(), dist.end()) - dist.begin());
}

double total(const std::vector<double>& dist) {
  return std::accumulate(dist.begin(), dist.end(), 0.0);
}

struct Candidate {
  double gain = 0.0;
  TreeNode::Test test = TreeNode::Test::Leaf;
  std::size_t attribute = 0;
  double threshold = 0.0;
  SequentialPattern pattern;
  std::vector<std::string> values;
  std::vector<std::vector<std::size_t>> branches;  // instance indices per child
};

class Inducer {
 public:
  Inducer(const Dataset& data, const TreeParams& params) : data_(data), params_(params) {}

  TreeNode build(const std::vector<std::size_t>& rows) {
    TreeNode node;
    node.distribution.assign(data_.classes.size(), 0.0);
    for (std::size_t r : rows) node.distribution[static_cast<std::size_t>(data_.labels[r])] += 1;
    node.label = majority(node.distribution);

    const bool pure = node.distribution[static_cast<std::size_t>(node.label)] ==
                      static_cast<double>(rows.size());
    if (pure || rows.size() < 2 * params_.min_leaf) return node;

    Candidate best;
    for (std::size_t a = 0; a < data_.attributes.size(); ++a) {
      Candidate c;
      switch (data_.attributes[a].type) {
        case AttributeType::Categorical: c = categorical(rows, a); break;
        case AttributeType::Numeric: c = numeric(rows, a); break;
        case AttributeType::Sequential: c = sequential(rows, a); break;
      }
      if (c.test != TreeNode::Test::Leaf && c.gain > best.gain) best = std::move(c);
    }
    if (best.test == TreeNode::Test::Leaf || best.gain <= 0) return node;

    node.test = best.test;
    node.attribute = best.attribute;
    node.threshold = best.threshold;
    node.pattern = std::move(best.pattern);
    node.values = std::move(best.values);
    for (const auto& branch : best.branches) node.children.push_back(build(branch));
    return node;
  }

 private:
  std::vector<int> labels_of(const std::vector<std::size_t>& rows) const {
    std::vector<int> out;
    out.reserve(rows.size());
    for (std::size_t r : rows) out.push_back(data_.labels[r]);
    return out;
  }

  Candidate categorical(const std::vector<std::size_t>& rows, std::size_t a) const {
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t r : rows) groups[std::get<std::string>(data_.instances[r].values[a])].push_back(r);
    std::size_t big = 0;
    for (const auto& [v, g] : groups) big += g.size() >= params_.min_leaf ? 1 : 0;
    Candidate c;
    if (groups.size() < 2 || big < 2) return c;
    std::vector<int> branch_of;
    std::vector<int> labels;
    int b = 0;
    for (auto& [v, g] : groups) {
      for (std::size_t r : g) {
        branch_of.push_back(b);
        labels.push_back(data_.labels[r]);
      }
      c.values.push_back(v);
      c.branches.push_back(std::move(g));
      ++b;
    }
    c.gain = normalized_gain(labels, branch_of);
    c.test = TreeNode::Test::Categorical;
    c.attribute = a;
    return c;
  }

  Candidate numeric(const std::vector<std::size_t>& rows, std::size_t a) const {
    std::vector<std::size_t> sorted = rows;
    auto value = [&](std::size_t r) { return std::get<double>(data_.instances[r].values[a]); };
    std::stable_sort(sorted.begin(), sorted.end(),
                     [&](std::size_t x, std::size_t y) { return value(x) < value(y); });
    const std::size_t k = data_.classes.size();
    std::vector<double> all(k, 0.0), left(k, 0.0), right(k);
    for (std::size_t r : sorted) all[static_cast<std::size_t>(data_.labels[r])] += 1;
    const double n = static_cast<double>(sorted.size());
    const double h = entropy(all);

    Candidate c;
    double best_gain = 0.0;
    std::size_t best_cut = 0;
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
      left[static_cast<std::size_t>(data_.labels[sorted[i]])] += 1;
      const std::size_t nl = i + 1, nr = sorted.size() - nl;
      if (value(sorted[i]) == value(sorted[i + 1])) continue;
      if (nl < params_.min_leaf || nr < params_.min_leaf) continue;
      for (std::size_t j = 0; j < k; ++j) right[j] = all[j] - left[j];
      const double gain = h - (static_cast<double>(nl) / n) * entropy(left) -
                          (static_cast<double>(nr) / n) * entropy(right);
      if (gain > best_gain) {
        best_gain = gain;
        best_cut = nl;
      }
    }
    if (best_cut == 0) return c;
    c.test = TreeNode::Test::Numeric;
    c.attribute = a;
    c.gain = best_gain;
    c.threshold = (value(sorted[best_cut - 1]) + value(sorted[best_cut])) / 2.0;
    c.branches.resize(2);
    for (std::size_t r : rows) c.branches[value(r) <= c.threshold ? 0 : 1].push_back(r);
    return c;
  }

  Candidate sequential(const std::vector<std::size_t>& rows, std::size_t a) const {
    std::vector<Sequence> seqs;
    seqs.reserve(rows.size());
    for (std::size_t r : rows) seqs.push_back(std::get<Sequence>(data_.instances[r].values[a]));
    const auto labels = labels_of(rows);
    Candidate c;
    const auto mined = mine_best_pattern(seqs, labels, params_.miner);
    if (!mined) return c;
    c.branches.resize(2);
    std::vector<int> branch_of;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const bool hit = contains(seqs[i], mined->pattern, params_.miner.max_gap);
      c.branches[hit ? 0 : 1].push_back(rows[i]);
      branch_of.push_back(hit ? 0 : 1);
    }
    if (c.branches[0].size() < params_.min_leaf || c.branches[1].size() < params_.min_leaf) return {};
    c.test = TreeNode::Test::Sequential;
    c.attribute = a;
    c.pattern = mined->pattern;
    c.gain = normalized_gain(labels, branch_of);
    return c;
  }

  const Dataset& data_;
  const TreeParams& params_;
};

// Subtree replacement bottom-up; returns the pessimistic error estimate.
double prune(TreeNode& node, double cf) {
  const double n = total(node.distribution);
  const double e = n - node.distribution[static_cast<std::size_t>(node.label)];
  const double as_leaf = e + pessimistic_added_errors(n, e, cf);
  if (node.is_leaf()) return as_leaf;
  double subtree = 0;
  for (auto& child : node.children) subtree += prune(child, cf);
  if (as_leaf <= subtree + 0.1) {
    node.test = TreeNode::Test::Leaf;
    node.children.clear();
    node.values.clear();
    node.pattern = {};
    node.threshold = 0;
    node.attribute = 0;
    return as_leaf;
  }
  return subtree;
}

}  // namespace

std::size_t DecisionTree::node_count() const { return count_nodes(root, false); }
std::size_t DecisionTree::leaf_count() const { return count_nodes(root, true); }

double pessimistic_added_errors(double n, double e, double cf) {
  if (n <= 0) return 0.0;
  if (cf <= 0 || cf >= 1) throw Error(ErrorCode::InvalidArgument, "confidence must lie in (0,1)");
  if (e < 1) {
    const double base = n * (1 - std::pow(cf, 1 / n));
    if (e == 0) return base;
    return base + e * (pessimistic_added_errors(n, 1, cf) - base);
  }
  if (e + 0.5 >= n) return std::max(n - e, 0.0);
  const double z = boost::math::quantile(boost::math::normal(), 1 - cf);
  const double f = (e + 0.5) / n;
  const double r = (f + z * z / (2 * n) + z * std::sqrt(f / n - f * f / n + z * z / (4 * n * n))) /
                   (1 + z * z / n);
  return r * n - e;
}

DecisionTree induce_tree(const Dataset& data, const TreeParams& params) {
  data.validate();
  if (data.instances.empty()) throw Error(ErrorCode::InvalidArgument, "empty dataset");
  if (params.min_leaf < 1) throw Error(ErrorCode::InvalidArgument, "min_leaf must be at least 1");
  std::vector<std::size_t> rows(data.instances.size());
  std::iota(rows.begin(), rows.end(), 0);
  DecisionTree tree;
  tree.attributes = data.attributes;
  tree.classes = data.classes;
  tree.max_gap = params.miner.max_gap;
  tree.root = Inducer(data, params).build(rows);
  if (params.prune) prune(tree.root, params.confidence);
  return tree;
}

TreePrediction predict_tree(const DecisionTree& tree, const Instance& instance) {
  const TreeNode* node = &tree.root;
  while (!node->is_leaf()) {
    if (node->attribute >= instance.values.size())
      throw Error(ErrorCode::InvalidArgument,
                  "instance lacks attribute '" + tree.attributes[node->attribute].name + "'");
    const Value& v = instance.values[node->attribute];
    if (!matches_type(v, tree.attributes[node->attribute].type))
      throw Error(ErrorCode::InvalidArgument,
                  "attribute '" + tree.attributes[node->attribute].name + "' has the wrong type");
    std::size_t child = 0;
    switch (node->test) {
      case TreeNode::Test::Numeric:
        child = std::get<double>(v) <= node->threshold ? 0 : 1;
        break;
      case TreeNode::Test::Sequential:
        child = contains(std::get<Sequence>(v), node->pattern, tree.max_gap) ? 0 : 1;
        break;
      case TreeNode::Test::Categorical: {
        const auto& s = std::get<std::string>(v);
        const auto it = std::find(node->values.begin(), node->values.end(), s);
        if (it == node->values.end()) {
          // Unseen value: answer with this node's majority.
          const double n = total(node->distribution);
          return {node->label, n > 0 ? node->distribution[static_cast<std::size_t>(node->label)] / n : 0.0};
        }
        child = static_cast<std::size_t>(it - node->values.begin());
        break;
      }
      case TreeNode::Test::Leaf:
        break;
    }
    node = &node->children[child];
  }
  const double n = total(node->distribution);
  return {node->label, n > 0 ? node->distribution[static_cast<std::size_t>(node->label)] / n : 0.0};
}

// ---------------------------------------------------------------------------
// Text form

namespace {

const char* type_name(AttributeType t) {
  switch (t) {
    case AttributeType::Categorical: return "categorical";
    case AttributeType::Numeric: return "numeric";
    case AttributeType::Sequential: return "sequential";
  }
  return "";
}

std::string dist_text(const std::vector<double>& dist) {
  std::string out = "[";
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (i) out += ",";
    out += detail::format_double(dist[i]);
  }
  return out + "]";
}

std::string branch_text(const DecisionTree& tree, const TreeNode& node, std::size_t child) {
  const std::string& name = tree.attributes[node.attribute].name;
  switch (node.test) {
    case TreeNode::Test::Sequential:
      return name + (child == 0 ? " contains " : " !contains ") + to_string(node.pattern);
    case TreeNode::Test::Numeric:
      return name + (child == 0 ? " <= " : " > ") + detail::format_double(node.threshold);
    case TreeNode::Test::Categorical:
      return name + " = " + node.values[child];
    case TreeNode::Test::Leaf:
      break;
  }
  return {};
}

void write_node(const DecisionTree& tree, const TreeNode& node, std::size_t depth, std::string& out) {
  for (std::size_t c = 0; c < node.children.size(); ++c) {
    const TreeNode& child = node.children[c];
    for (std::size_t d = 0; d < depth; ++d) out += "|   ";
    out += branch_text(tree, node, c);
    if (child.is_leaf()) {
      out += ": " + tree.classes[static_cast<std::size_t>(child.label)] + " " + dist_text(child.distribution) + "\n";
    } else {
      out += " " + dist_text(child.distribution) + "\n";
      write_node(tree, child, depth + 1, out);
    }
  }
}

void check_writable(const TreeNode& node) {
  if (node.test == TreeNode::Test::Sequential)
    for (const auto& el : node.pattern.elements)
      for (const auto& item : el) {
        check_token(item, "pattern item");
        if (item.find_first_of("(),>") != std::string::npos)
          throw Error(ErrorCode::InvalidArgument, "pattern item '" + item + "' contains reserved characters");
      }
  for (const auto& v : node.values) check_token(v, "categorical value");
  for (const auto& c : node.children) check_writable(c);
}

struct Line {
  std::size_t depth;
  std::string body;
  std::size_t number;
};

class TreeReader {
 public:
  TreeReader(DecisionTree& tree, std::vector<Line> lines) : tree_(tree), lines_(std::move(lines)) {}

  TreeNode read_root() {
    if (lines_.empty()) throw ParseError("<tree>", 0, "missing tree body");
    if (lines_[0].depth == 0 && lines_[0].body.rfind(": ", 0) == 0) {
      TreeNode leaf;
      std::string rest = lines_[0].body.substr(2);
      read_leaf_tail(rest, leaf, lines_[0].number);
      if (lines_.size() > 1) fail(lines_[1].number, "unexpected line after root leaf");
      return leaf;
    }
    TreeNode root = read_children(0);
    if (pos_ != lines_.size()) fail(lines_[pos_].number, "unexpected indentation");
    root.distribution.assign(tree_.classes.size(), 0.0);
    for (const auto& c : root.children)
      for (std::size_t k = 0; k < c.distribution.size(); ++k) root.distribution[k] += c.distribution[k];
    root.label = majority(root.distribution);
    return root;
  }

 private:
  [[noreturn]] static void fail(std::size_t line, const std::string& msg) {
    throw ParseError("<tree>", line, msg);
  }

  std::vector<double> parse_dist(std::string_view text, std::size_t line) const {
    if (text.size() < 2 || text.front() != '[' || text.back() != ']') fail(line, "expected [distribution]");
    std::vector<double> out;
    for (const auto& part : detail::split(text.substr(1, text.size() - 2), ',')) {
      double v = 0;
      if (!detail::parse_number(part, v) || v < 0) fail(line, "bad distribution entry '" + part + "'");
      out.push_back(v);
    }
    if (out.size() != tree_.classes.size()) fail(line, "distribution size differs from class count");
    return out;
  }

  // "label [dist]"
  void read_leaf_tail(std::string_view rest, TreeNode& leaf, std::size_t line) const {
    const auto sp = rest.find(' ');
    if (sp == std::string_view::npos) fail(line, "expected 'label [distribution]'");
    const std::string label(rest.substr(0, sp));
    const auto it = std::find(tree_.classes.begin(), tree_.classes.end(), label);
    if (it == tree_.classes.end()) fail(line, "unknown class '" + label + "'");
    leaf.test = TreeNode::Test::Leaf;
    leaf.label = static_cast<int>(it - tree_.classes.begin());
    leaf.distribution = parse_dist(rest.substr(sp + 1), line);
  }

  std::size_t attribute_index(const std::string& name, std::size_t line) const {
    for (std::size_t i = 0; i < tree_.attributes.size(); ++i)
      if (tree_.attributes[i].name == name) return i;
    fail(line, "unknown attribute '" + name + "'");
  }

  // Reads every branch line at `depth` and returns the node owning them.
  TreeNode read_children(std::size_t depth) {
    TreeNode node;
    bool first = true;
    while (pos_ < lines_.size() && lines_[pos_].depth == depth) {
      const Line line = lines_[pos_++];
      std::string_view body = line.body;
      TreeNode child;
      // Split off the tail: either ": label [dist]" or " [dist]".
      const auto bracket = body.rfind(" [");
      if (bracket == std::string_view::npos) fail(line.number, "missing distribution");
      std::string_view cond = body.substr(0, bracket);
      const std::string_view dist = body.substr(bracket + 1);
      bool leaf = false;
      std::string label;
      if (const auto colon = cond.rfind(": "); colon != std::string_view::npos) {
        leaf = true;
        label = std::string(cond.substr(colon + 2));
        cond = cond.substr(0, colon);
      }

      const auto parts = detail::split(cond, ' ');
      if (parts.size() != 3) fail(line.number, "malformed branch condition");
      const std::size_t attr = attribute_index(parts[0], line.number);
      const std::string& op = parts[1];
      TreeNode::Test test;
      std::size_t branch = 0;
      if (op == "contains" || op == "!contains") {
        test = TreeNode::Test::Sequential;
        branch = op == "contains" ? 0 : 1;
      } else if (op == "<=" || op == ">") {
        test = TreeNode::Test::Numeric;
        branch = op == "<=" ? 0 : 1;
      } else if (op == "=") {
        test = TreeNode::Test::Categorical;
        branch = node.children.size();
      } else {
        fail(line.number, "unknown operator '" + op + "'");
      }
      if (first) {
        node.test = test;
        node.attribute = attr;
        first = false;
        if (test == TreeNode::Test::Numeric) {
          if (!detail::parse_number(parts[2], node.threshold)) fail(line.number, "bad threshold");
        } else if (test == TreeNode::Test::Sequential) {
          node.pattern = parse_pattern(parts[2]);
        }
      } else if (node.test != test || node.attribute != attr) {
        fail(line.number, "sibling branches test different attributes");
      }
      if (test != TreeNode::Test::Categorical && branch != node.children.size())
        fail(line.number, "branches out of order");
      if (test == TreeNode::Test::Categorical) node.values.push_back(parts[2]);
      if (test == TreeNode::Test::Numeric) {
        double t = 0;
        if (!detail::parse_number(parts[2], t) || t != node.threshold) fail(line.number, "threshold mismatch");
      }
      if (test == TreeNode::Test::Sequential && parse_pattern(parts[2]) != node.pattern)
        fail(line.number, "pattern mismatch");

      if (leaf) {
        read_leaf_tail(label + " " + std::string(dist), child, line.number);
      } else {
        child = read_children(depth + 1);
        if (child.children.empty()) fail(line.number, "internal branch without children");
        child.distribution = parse_dist(dist, line.number);
        child.label = majority(child.distribution);
      }
      node.children.push_back(std::move(child));
    }
    if (node.children.size() < 2) {
      const std::size_t at = pos_ < lines_.size() ? lines_[pos_].number : (lines_.empty() ? 0 : lines_.back().number);
      fail(at, "a test needs at least two branches");
    }
    if (node.test != TreeNode::Test::Categorical && node.children.size() != 2)
      fail(lines_[pos_ - 1].number, "binary test with more than two branches");
    return node;
  }

  DecisionTree& tree_;
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string write_tree(const DecisionTree& tree) {
  check_writable(tree.root);
  std::string out = "j48s\n";
  out += "classes\t";
  for (std::size_t i = 0; i < tree.classes.size(); ++i) out += (i ? "," : "") + tree.classes[i];
  out += "\nmax_gap\t" + std::to_string(tree.max_gap) + "\n";
  for (const auto& a : tree.attributes) out += "attribute\t" + a.name + "\t" + type_name(a.type) + "\n";
  out += "tree\n";
  if (tree.root.is_leaf())
    out += ": " + tree.classes[static_cast<std::size_t>(tree.root.label)] + " " + dist_text(tree.root.distribution) + "\n";
  else
    write_node(tree, tree.root, 0, out);
  return out;
}

DecisionTree read_tree(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  auto next = [&]() {
    if (!std::getline(in, line)) throw ParseError("<tree>", lineno + 1, "unexpected end of input");
    ++lineno;
    detail::strip_cr(line);
  };
  DecisionTree tree;
  next();
  if (line != "j48s") throw ParseError("<tree>", lineno, "expected 'j48s' header");
  bool body = false;
  while (!body) {
    next();
    const auto f = detail::split(line, '\t');
    if (f[0] == "tree") {
      body = true;
    } else if (f[0] == "classes" && f.size() == 2) {
      tree.classes = detail::split(f[1], ',');
    } else if (f[0] == "max_gap" && f.size() == 2) {
      if (!detail::parse_number(f[1], tree.max_gap) || tree.max_gap < 1)
        throw ParseError("<tree>", lineno, "bad max_gap");
    } else if (f[0] == "attribute" && f.size() == 3) {
      AttributeType t;
      if (f[2] == "categorical") t = AttributeType::Categorical;
      else if (f[2] == "numeric") t = AttributeType::Numeric;
      else if (f[2] == "sequential") t = AttributeType::Sequential;
      else throw ParseError("<tree>", lineno, "unknown attribute type '" + f[2] + "'");
      tree.attributes.push_back({f[1], t});
    } else {
      throw ParseError("<tree>", lineno, "unexpected header line");
    }
  }
  if (tree.classes.empty()) throw ParseError("<tree>", lineno, "missing classes line");

  std::vector<Line> lines;
  while (std::getline(in, line)) {
    ++lineno;
    detail::strip_cr(line);
    if (detail::trim(line).empty()) continue;
    std::size_t depth = 0;
    std::string_view rest = line;
    while (rest.rfind("|   ", 0) == 0) {
      rest.remove_prefix(4);
      ++depth;
    }
    lines.push_back({depth, std::string(rest), lineno});
  }
  tree.root = TreeReader(tree, std::move(lines)).read_root();
  // Type consistency between tests and declared attributes.
  std::vector<const TreeNode*> stack{&tree.root};
  while (!stack.empty()) {
    const TreeNode* n = stack.back();
    stack.pop_back();
    if (!n->is_leaf()) {
      const AttributeType t = tree.attributes[n->attribute].type;
      const bool ok = (n->test == TreeNode::Test::Categorical && t == AttributeType::Categorical) ||
                      (n->test == TreeNode::Test::Numeric && t == AttributeType::Numeric) ||
                      (n->test == TreeNode::Test::Sequential && t == AttributeType::Sequential);
      if (!ok)
        throw ParseError("<tree>", 0, "test on '" + tree.attributes[n->attribute].name + "' does not fit its type");
    }
    for (const auto& c : n->children) stack.push_back(&c);
  }
  return tree;
}

void save_tree(const DecisionTree& tree, const std::filesystem::path& path) {
  auto out = detail::open_output(path);
  out << write_tree(tree);
  if (!out) throw Error(ErrorCode::Io, "failed writing '" + path.string() + "'");
}

DecisionTree load_tree(const std::filesystem::path& path) { return read_tree(detail::read_file(path)); }

}  // namespace convtag::seqtree
