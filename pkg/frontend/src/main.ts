/** Browser bootstrap: DOM wiring and the websocket stream transport. */

import { BackendApi } from "./api.js";
import { ChatController, StreamTransport } from "./controller.js";
import { renderAgentsPanel, renderAuthModal, renderTranscript } from "./render.js";
import type { Method, StreamEvent } from "./types.js";

const BACKEND = (window as { TOOLCHAT_BACKEND?: string }).TOOLCHAT_BACKEND ?? "";

function websocketTransport(baseUrl: string): StreamTransport {
  return {
    open(sessionId, handlers) {
      const wsBase = (baseUrl || window.location.origin).replace(/^http/, "ws");
      const socket = new WebSocket(`${wsBase}/sessions/${sessionId}/stream`);
      let closedByUs = false;
      socket.onmessage = (message) => {
        handlers.onEvent(JSON.parse(message.data) as StreamEvent);
      };
      socket.onclose = () => {
        if (!closedByUs) setTimeout(handlers.onDrop, 500);
      };
      return () => {
        closedByUs = true;
        socket.close();
      };
    },
  };
}

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

async function boot(): Promise<void> {
  const api = new BackendApi(BACKEND);
  const controller = new ChatController(api, websocketTransport(BACKEND), render);

  const transcript = el<HTMLDivElement>("transcript");
  const agentsPanel = el<HTMLDivElement>("agents");
  const modalHost = el<HTMLDivElement>("modal-host");
  const input = el<HTMLInputElement>("message");
  const sendButton = el<HTMLButtonElement>("send");
  const methodSelect = el<HTMLSelectElement>("method");
  const connectForm = el<HTMLFormElement>("connect-form");

  function render(): void {
    transcript.innerHTML = renderTranscript(controller.state);
    agentsPanel.innerHTML = renderAgentsPanel(controller.state);
    modalHost.innerHTML = renderAuthModal(controller.state);
    input.disabled = sendButton.disabled = controller.state.busy;
    transcript.scrollTop = transcript.scrollHeight;

    for (const button of transcript.querySelectorAll<HTMLButtonElement>(".example")) {
      button.onclick = () => {
        input.value = button.dataset.prompt ?? "";
        input.focus();
      };
    }
    const submit = modalHost.querySelector<HTMLButtonElement>("#auth-submit");
    const cancel = modalHost.querySelector<HTMLButtonElement>("#auth-cancel");
    if (submit) {
      submit.onclick = () => {
        const username = modalHost.querySelector<HTMLInputElement>("#auth-user")?.value ?? "";
        const password = modalHost.querySelector<HTMLInputElement>("#auth-pass")?.value ?? "";
        void controller.submitContainerLogin({ username, password });
      };
    }
    if (cancel) cancel.onclick = () => controller.cancelContainerLogin();
  }

  connectForm.onsubmit = (event) => {
    event.preventDefault();
    const url = el<HTMLInputElement>("platform-url").value;
    const username = el<HTMLInputElement>("platform-user").value;
    const password = el<HTMLInputElement>("platform-pass").value;
    void controller.connect(url, username, password).catch((err) => {
      el<HTMLDivElement>("connect-status").textContent = String(err.message ?? err);
    });
  };

  methodSelect.onchange = () => {
    void controller.setMethod(methodSelect.value as Method);
  };

  const submitMessage = () => {
    const message = input.value;
    input.value = "";
    void controller.send(message);
  };
  sendButton.onclick = submitMessage;
  input.onkeydown = (event) => {
    if (event.key === "Enter" && !event.shiftKey) {
      event.preventDefault();
      submitMessage();
    }
  };

  await controller.init();
  render();
}

void boot();
