from hofree.acceptance import run_suite


def check_suite(config, suite='exact', quick=False):
    return run_suite(suite, config, quick)


class CheckCommandMixin:
    COMMAND_HANDLERS = {
        'CHECK': check_suite,
    }

    RESPONSE_CALLBACKS = {
        'CHECK': lambda r, **_: list(r),
    }

    async def check(self, suite='exact', quick=False):
        """Run the acceptance criteria of a suite; one result per criterion"""
        return await self.execute_command('CHECK', suite=suite, quick=quick)
