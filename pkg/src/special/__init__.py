"""特殊函数：Lambert W₀、辅助函数 f/g、密度、求积与单调求根."""


class SpecialFunctionError(ValueError):
    """特殊函数的定义域条件被违反或数值计算失败."""
