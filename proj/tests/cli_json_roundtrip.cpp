// Runs the CLI with the given arguments, parses its JSON output and checks
// that re-emitting it reproduces the bytes exactly.

#include <array>
#include <cstdio>
#include <iostream>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

int main(int argc, char ** argv)
{
    if (argc < 2) {
        std::cerr << "usage: cli_json_roundtrip <cli> [args...]\n";
        return 2;
    }
    std::string cmd;
    for (int i = 1; i < argc; ++i)
        cmd += std::string(i > 1 ? " " : "") + "'" + argv[i] + "'";
    FILE * pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        std::cerr << "cannot run " << cmd << '\n';
        return 1;
    }
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe))
        out.append(buf.data(), n);
    int status = pclose(pipe);
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
        std::cerr << "command failed: " << cmd << '\n';
        return 1;
    }
    if (!out.empty() && out.back() == '\n')
        out.pop_back();
    std::string again = nlohmann::json::parse(out).dump();
    if (again != out) {
        std::cerr << "round trip differs\n" << out << '\n' << again << '\n';
        return 1;
    }
    std::cout << "round trip ok (" << out.size() << " bytes)\n";
    return 0;
}
