#ifndef MONOCERT_CLI_HPP
#define MONOCERT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace monocert::cli {

// Exit codes: 0 = computed, verdict positive (p-maximal / DVR / statements
// hold); 1 = computed, verdict negative (witness attached); 2 = input or
// usage error; 3 = resource cap exceeded.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace monocert::cli

#endif
