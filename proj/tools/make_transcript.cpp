// Builds a replay transcript by rendering the stage prompts for a profile and
// pairing them with authored reply files (r01_*.txt ... r16_*.txt). Used to
// regenerate the bundled fixture transcript after template or reply edits.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ontopipe/gateway.hpp"
#include "ontopipe/prompt.hpp"

namespace fs = std::filesystem;
using namespace ontopipe;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Build a replay transcript from a profile and authored replies"};
    std::string profile_path, templates_dir, replies_dir, output_path;
    std::string model_id = "gpt-4o-fixture";
    app.add_option("--profile", profile_path, "Domain profile JSON")->required();
    app.add_option("--templates", templates_dir, "Template directory")->required();
    app.add_option("--replies", replies_dir, "Directory of r01_*.txt ... r16_*.txt replies")
        ->required();
    app.add_option("--out", output_path, "Transcript output path (JSONL)")->required();
    app.add_option("--model-id", model_id, "model_id recorded on every turn");
    CLI11_PARSE(app, argc, argv);

    try {
        DomainProfile profile = load_profile(profile_path);
        PromptLibrary library = PromptLibrary::load(templates_dir);

        // Replies are matched to stages by their rNN_ prefix.
        std::map<int, fs::path> replies;
        for (const auto& entry : fs::directory_iterator(replies_dir)) {
            std::string name = entry.path().filename().string();
            if (name.size() > 3 && name[0] == 'r' && std::isdigit(name[1]) && std::isdigit(name[2]))
                replies[std::stoi(name.substr(1, 2))] = entry.path();
        }

        PipelineState state;
        state.profile = profile;
        std::vector<TurnRecord> turns;
        for (int number = 1; number <= kLastGenerationStage; ++number) {
            Stage stage = static_cast<Stage>(number);
            auto it = replies.find(number);
            if (it == replies.end()) throw Error("no reply file for stage " + std::to_string(number));
            std::string prompt = library.render(stage, state);
            state.stage = number;
            turns.push_back({static_cast<int>(turns.size()), "user", prompt, model_id,
                             "1970-01-01T00:00:00Z"});
            turns.push_back({static_cast<int>(turns.size()), "assistant", read_file(it->second),
                             model_id, "1970-01-01T00:00:00Z"});
        }

        fs::create_directories(fs::path(output_path).parent_path());
        write_transcript(output_path, turns);
        std::cout << "wrote " << turns.size() << " turns to " << output_path << "\n";

        // A categorize.txt reply, when present, yields the one-exchange
        // categorization session beside the main transcript.
        fs::path categorize_reply = fs::path(replies_dir) / "categorize.txt";
        if (fs::exists(categorize_reply)) {
            std::vector<TurnRecord> cat_turns = {
                {0, "user", library.render_categorize(profile), model_id,
                 "1970-01-01T00:00:00Z"},
                {1, "assistant", read_file(categorize_reply), model_id, "1970-01-01T00:00:00Z"},
            };
            fs::path cat_path =
                fs::path(output_path).parent_path() / "session_categorize.jsonl";
            write_transcript(cat_path, cat_turns);
            std::cout << "wrote 2 turns to " << cat_path.string() << "\n";
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
