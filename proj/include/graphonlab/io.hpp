#pragma once

#include <string>

#include "graphonlab/constraints.hpp"
#include "graphonlab/graphon.hpp"
#include "graphonlab/regularity.hpp"

namespace graphonlab {

// Graphon descriptors:
//   constant:<r>          e.g. constant:1/2
//   cf:<m>                Conlon-Fox graphon on 2^m blocks
//   svejk                 the 13-part graphon (honors tower cap / tail K)
//   half                  threshold graphon 1{x+y>=1}
//   step:<breaks>;<rows>  e.g. step:0,1/2,1;1,1/2|1/2,0
GraphonPtr parse_graphon(const std::string& descriptor, int tower_cap, int tail_k);

// Partition files: '#' comments; directives
//   grid <n>
//   part intervals <a>:<b> [<a>:<b> ...]
//   part blocks <i> [<j> ...]        (requires a grid line)
//   coordinate-signs <m> <c>         (whole-file shortcut)
PartitionSpec parse_partition(const std::string& text);
std::string render_partition(const PartitionSpec& p);

// Part-table files: '#' comments; one part per line,
//   part <name> <measure> <degree>
// where a ">=" prefix on the degree marks a lower bound.
PartTable parse_part_table(const std::string& text);

// "p/q" when exact (unless decimal is forced), 15 significant digits otherwise.
std::string format_number(bool is_exact, const Rational& exact, double value, bool decimal);
std::string format_double(double value);

}  // namespace graphonlab
