#pragma once

#include <memsuite/core/registry.hpp>

namespace test {

inline memsuite::environment make_env(const std::string& id, memsuite::task_params params = {},
                                      memsuite::observation_mode mode = memsuite::observation_mode::state) {
    memsuite::env_config c;
    c.task_id = id;
    c.obs_mode = mode;
    c.params = std::move(params);
    return memsuite::make(c);
}

template <class T>
T& impl(memsuite::environment& env) {
    return dynamic_cast<T&>(env.impl());
}

}  // namespace test
