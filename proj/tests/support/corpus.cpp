#include "support/corpus.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hshift::testing {

  std::string corpus_path(std::string const& name) {
    return std::string(HSHIFT_CORPUS_DIR) + "/" + name;
  }

  json::Json read_corpus(std::string const& name) {
    std::ifstream in(corpus_path(name));
    if (!in) {
      throw std::runtime_error("missing corpus file " + name);
    }
    std::ostringstream text;
    text << in.rdbuf();
    return json::parse_text(text.str());
  }

  std::vector<CorpusRun> corpus_runs() {
    std::vector<CorpusRun> out;
    auto const             manifest = read_corpus("manifest.json");
    for (auto const& r : manifest.at("runs")) {
      CorpusRun run;
      run.command    = r.at("command").get<std::string>();
      run.descriptor = r.at("descriptor").get<std::string>();
      run.exit       = r.at("exit").get<int>();
      run.args       = {run.command, corpus_path(run.descriptor)};
      bool file_next = false;
      for (auto const& f : r.at("flags")) {
        auto s = f.get<std::string>();
        run.args.push_back(file_next ? corpus_path(s) : s);
        file_next = s == "--pattern" || s == "--language";
      }
      out.push_back(std::move(run));
    }
    return out;
  }

}  // namespace hshift::testing
