// Protocol test double for the external-evaluator JSON-lines contract.
// Reads {"id":N,"design":{"shape":[r,c],"cells":"..."}} lines from stdin and
// answers {"id":N,"fitness":F} where F counts the 'H' cells.
//
// Flags for exercising failure paths:
//   --shuffle        buffer pairs of requests and answer them in swapped order
//   --error-id N     answer request N with {"id":N,"error":"sim crash"}
//   --hang-after N   stop answering after N responses (still reads input)
//   --die-after N    exit after N responses
//   --fitness-const X  answer X instead of the H count

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace {

struct Options {
    bool shuffle = false;
    long error_id = -1;
    long hang_after = -1;
    long die_after = -1;
    bool const_fitness = false;
    double fitness_value = 0.0;
};

Options parse_args(int argc, char** argv) {
    Options opt;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        auto next = [&]() -> const char* {
            if (i + 1 >= argc) {
                std::fprintf(stderr, "echo-eval: %s needs a value\n", a.c_str());
                std::exit(2);
            }
            return argv[++i];
        };
        if (a == "--shuffle")
            opt.shuffle = true;
        else if (a == "--error-id")
            opt.error_id = std::atol(next());
        else if (a == "--hang-after")
            opt.hang_after = std::atol(next());
        else if (a == "--die-after")
            opt.die_after = std::atol(next());
        else if (a == "--fitness-const") {
            opt.const_fitness = true;
            opt.fitness_value = std::atof(next());
        } else {
            std::fprintf(stderr, "echo-eval: unknown flag %s\n", a.c_str());
            std::exit(2);
        }
    }
    return opt;
}

long g_responses = 0;

void respond(const std::string& line, const Options& opt) {
    nlohmann::json req;
    try {
        req = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        std::fprintf(stderr, "echo-eval: bad request line: %s\n", e.what());
        std::exit(3);
    }
    const long id = req.at("id").get<long>();

    if (opt.hang_after >= 0 && g_responses >= opt.hang_after) return;  // go silent
    if (opt.die_after >= 0 && g_responses >= opt.die_after) std::exit(0);

    nlohmann::json resp;
    resp["id"] = id;
    if (id == opt.error_id) {
        resp["error"] = "sim crash";
    } else if (opt.const_fitness) {
        resp["fitness"] = opt.fitness_value;
    } else {
        const auto cells = req.at("design").at("cells").get<std::string>();
        long h = 0;
        for (char c : cells)
            if (c == 'H') h++;
        resp["fitness"] = static_cast<double>(h);
    }
    std::cout << resp.dump() << std::endl;  // endl: flush per line
    g_responses++;
}

}  // namespace

int main(int argc, char** argv) {
    const Options opt = parse_args(argc, argv);

    std::string line;
    std::vector<std::string> held;
    while (std::getline(std::cin, line)) {
        if (line.empty()) continue;
        if (!opt.shuffle) {
            respond(line, opt);
            continue;
        }
        held.push_back(line);
        if (held.size() == 2) {  // answer the pair back-to-front
            respond(held[1], opt);
            respond(held[0], opt);
            held.clear();
        }
    }
    for (const auto& h : held) respond(h, opt);
    return 0;
}
