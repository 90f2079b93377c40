#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "degfront/asymptotics.hpp"
#include "degfront/energy.hpp"
#include "degfront/model.hpp"
#include "degfront/operators.hpp"
#include "degfront/profile.hpp"
#include "degfront/spectra.hpp"

namespace degfront {

// RFC 4180 writer: CRLF records, quoting only where required.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);
    void row(const std::vector<std::string>& fields);
    static std::string cell(double v); // fixed %.17g rendering

  private:
    std::ofstream os_;
    std::size_t width_;
    void emit(const std::vector<std::string>& fields);
};

nlohmann::json report_json(const cplx& z);
nlohmann::json report_json(const HypothesisReport& r);
nlohmann::json report_json(const WeightPlan& r);
nlohmann::json report_json(const MorseIndexReport& r);
nlohmann::json report_json(const SpectrumReport& r);
nlohmann::json report_json(const RegSweep& r);
nlohmann::json report_json(const EnergyReport& r);
nlohmann::json report_json(const DecayReport& r);
nlohmann::json report_json(const TailAudit& r);
nlohmann::json profile_meta_json(const FrontProfile& p);

const char* decay_class_name(DecayClass c);
const char* verdict_name(Verdict v);

} // namespace degfront
