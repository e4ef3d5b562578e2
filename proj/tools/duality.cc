#include <duality/cli.hh>

#include <iostream>

auto main(int argc, char * argv[]) -> int
{
    return duality::run_cli({argv, argv + argc}, std::cout, std::cerr);
}
