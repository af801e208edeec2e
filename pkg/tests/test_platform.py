"""Registry, auth, and invocation behavior of the runtime platform."""

import threading
import time

import pytest

from toolchat.actions import ContainerDescriptor
from toolchat.containers import ContainerBuilder, p_integer, p_string
from toolchat.platform import (
    AuthError,
    ContainerAuthFailed,
    ContainerNotFound,
    DuplicateContainer,
    InvalidCredentials,
    InvocationStatus,
    RuntimePlatform,
)

USERS = {"admin": "s3cret", "guest": "guest"}


def make_echo_container(container_id="echo", agent_id="echo-agent", requires_login=False, users=None):
    builder = ContainerBuilder(container_id, requires_login=requires_login, users=users)
    builder.seed({"value": 0})
    agent = builder.agent(agent_id, "Stores one number and echoes input.")

    @agent.action("get_value", "Read the stored number.", result=p_integer())
    def get_value(state, args):
        return state["value"]

    @agent.action("set_value", "Store a number.", {"value": p_integer()}, result=p_integer())
    def set_value(state, args):
        state["value"] = args["value"]
        return state["value"]

    @agent.action("greet", "Greet a person.", {"name": p_string()}, result=p_string())
    def greet(state, args):
        return f"hello {args['name']}"

    @agent.action("sleepy", "Sleeps before answering.", {"seconds": p_integer()})
    def sleepy(state, args):
        time.sleep(args["seconds"])
        return "awake"

    return builder.build()


@pytest.fixture()
def platform():
    return RuntimePlatform(users=USERS)


@pytest.fixture()
def token(platform):
    return platform.login("admin", "s3cret").token


def install_echo(platform, token, **kw):
    container = make_echo_container(**kw)
    platform.register(container.descriptor(), container, token)
    return container


# -- auth ---------------------------------------------------------------------

def test_login_issues_token_with_ttl(platform):
    before = time.time()
    token = platform.login("admin", "s3cret")
    assert token.issued_to == "admin"
    assert token.expiry == pytest.approx(before + platform.token_ttl_s, abs=5)


def test_wrong_password_rejected(platform):
    with pytest.raises(InvalidCredentials):
        platform.login("admin", "nope")


def test_expired_token_rejected():
    now = {"t": 1000.0}
    platform = RuntimePlatform(users=USERS, token_ttl_s=60, clock=lambda: now["t"])
    token = platform.login("admin", "s3cret").token
    assert platform.get_agents(token) == []
    now["t"] += 61
    with pytest.raises(AuthError):
        platform.get_agents(token)


def test_every_route_needs_a_token(platform):
    with pytest.raises(AuthError):
        platform.get_agents("bogus")
    with pytest.raises(AuthError):
        platform.invoke_action("bogus", "a", "b", {})
    with pytest.raises(AuthError):
        platform.register(ContainerDescriptor(container_id="x"), None, "bogus")


# -- registry -----------------------------------------------------------------

def test_register_then_agents_visible(platform, token):
    install_echo(platform, token)
    agents = platform.get_agents(token)
    assert [a.agent.agent_id for a in agents] == ["echo-agent"]
    assert len(agents[0].agent.actions) == 4


def test_register_deregister_roundtrip(platform, token):
    before = platform.get_agents(token)
    install_echo(platform, token)
    platform.deregister("echo", token)
    assert platform.get_agents(token) == before


def test_duplicate_container_rejected(platform, token):
    install_echo(platform, token)
    with pytest.raises(DuplicateContainer):
        install_echo(platform, token)


def test_duplicate_agent_id_across_containers_rejected(platform, token):
    install_echo(platform, token)
    with pytest.raises(DuplicateContainer):
        install_echo(platform, token, container_id="other-container")


def test_registry_reads_see_completed_registrations(platform, token):
    """A get_agents that starts after a register completes includes it."""
    errors = []

    def register_many(start):
        try:
            for i in range(start, start + 10):
                container = make_echo_container(f"c{i}", f"agent{i}")
                platform.register(container.descriptor(), container, token)
                visible = {a.container_id for a in platform.get_agents(token)}
                assert f"c{i}" in visible
        except Exception as err:  # surfaced after join
            errors.append(err)

    threads = [threading.Thread(target=register_many, args=(n,)) for n in (0, 10, 20)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert errors == []
    assert len(platform.get_agents(token)) == 30


# -- invocation ---------------------------------------------------------------

def test_invoke_ok_and_logged(platform, token):
    install_echo(platform, token)
    result = platform.invoke_action(token, "echo-agent", "set_value", {"value": "7"})
    assert result.status == InvocationStatus.OK
    assert result.payload == 7  # cast applied before dispatch
    result = platform.invoke_action(token, "echo-agent", "get_value", {})
    assert result.payload == 7
    assert len(platform.invocation_log) == 2
    assert platform.invocation_log[0].tool_name == "echo-agent--set_value"


def test_unknown_action_not_found(platform, token):
    install_echo(platform, token)
    result = platform.invoke_action(token, "echo-agent", "does_not_exist", {})
    assert result.status == InvocationStatus.NOT_FOUND


def test_validation_failure_becomes_action_error(platform, token):
    install_echo(platform, token)
    result = platform.invoke_action(token, "echo-agent", "greet", {})
    assert result.status == InvocationStatus.ACTION_ERROR
    assert result.payload == "Missing required parameter 'name'"


def test_handler_exception_surfaces_as_action_error(platform, token):
    container = make_echo_container()
    platform.register(container.descriptor(), container, token)
    result = platform.invoke_action(token, "echo-agent", "set_value", {"value": "not a number"})
    assert result.status == InvocationStatus.ACTION_ERROR


def test_action_timeout():
    platform = RuntimePlatform(users=USERS, action_timeout_s=0.05)
    token = platform.login("admin", "s3cret").token
    install_echo(platform, token)
    result = platform.invoke_action(token, "echo-agent", "sleepy", {"seconds": 1})
    assert result.status == InvocationStatus.ACTION_ERROR
    assert "timed out" in result.payload


def test_elapsed_recorded(platform, token):
    install_echo(platform, token)
    result = platform.invoke_action(token, "echo-agent", "get_value", {})
    assert result.elapsed_ms >= 0


# -- container login ------------------------------------------------------------

@pytest.fixture()
def secured(platform, token):
    install_echo(
        platform, token,
        container_id="secured", agent_id="vault",
        requires_login=True, users={"ana": "pw"},
    )
    return platform


def test_invoke_without_container_login_prompts_auth(secured, token):
    result = secured.invoke_action(token, "vault", "get_value", {})
    assert result.status == InvocationStatus.AUTH_REQUIRED


def test_container_login_then_invoke(secured, token):
    secured.container_login(token, "secured", {"username": "ana", "password": "pw"})
    result = secured.invoke_action(token, "vault", "get_value", {})
    assert result.status == InvocationStatus.OK
    # credentials are remembered; no re-auth per request
    assert secured.invoke_action(token, "vault", "get_value", {}).status == InvocationStatus.OK


def test_container_login_bad_credentials(secured, token):
    with pytest.raises(ContainerAuthFailed):
        secured.container_login(token, "secured", {"username": "ana", "password": "wrong"})


def test_container_login_is_per_user(secured, platform, token):
    secured.container_login(token, "secured", {"username": "ana", "password": "pw"})
    other = platform.login("guest", "guest").token
    assert secured.invoke_action(other, "vault", "get_value", {}).status == InvocationStatus.AUTH_REQUIRED


def test_container_login_noop_without_requirement(platform, token):
    install_echo(platform, token)
    platform.container_login(token, "echo", {})  # ack, nothing stored


def test_container_login_unknown_container(platform, token):
    with pytest.raises(ContainerNotFound):
        platform.container_login(token, "ghost", {})
