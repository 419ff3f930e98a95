#pragma once

#include <string>

#include "oas/funcrep.hpp"
#include "oas/orliczfn.hpp"
#include "oas/weightfn.hpp"

namespace oas {

/// Inline potential specs: "gaussian:c=1,n=2", "quad:A=[[1,0],[0,2]],a=0",
/// "senv:s=0.5,c=1,n=1", "sampled:path=f.csv". Unknown keys are rejected.
FunctionRep parse_function(const std::string& spec);

/// Weight specs: "exp", "const", "power:alpha=2".
WeightFunction parse_weight(const std::string& spec);

/// Orlicz specs: "power:e=-0.5", "power:p=2,n=1" (the t^{-p/n} form),
/// "const:v=1".
OrliczFunction parse_orlicz(const std::string& spec);

/// Grid specs: "cube:r=3,count=81,n=2" or "box:lo=[-1,-2],hi=[1,2],count=41".
Grid parse_grid(const std::string& spec);

/// Shortest decimal string that round-trips the exact double.
std::string format_double(double v);

/// CSV with a header row (x1,...,xn,value); nodes outside the domain carry
/// "inf". Re-importing reproduces the sample values exactly.
void write_samples_csv(const std::string& path, const FunctionRep& f, const Grid& grid);
FunctionRep read_samples_csv(const std::string& path);

}  // namespace oas
